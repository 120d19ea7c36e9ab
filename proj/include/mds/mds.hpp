#pragma once

#include "mds/error.hpp"
#include "mds/number.hpp"
#include "mds/field.hpp"
#include "mds/linalg.hpp"
#include "mds/lattice_geom.hpp"
#include "mds/laurent.hpp"
#include "mds/curves.hpp"
#include "mds/blowup.hpp"
#include "mds/sections.hpp"
#include "mds/certify.hpp"
#include "mds/io.hpp"
