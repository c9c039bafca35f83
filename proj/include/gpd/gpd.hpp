#pragma once

#include "gpd/error.hpp"
#include "gpd/field.hpp"
#include "gpd/matrix.hpp"
#include "gpd/algebra.hpp"
#include "gpd/module.hpp"
#include "gpd/homology.hpp"
#include "gpd/gorenstein.hpp"
#include "gpd/deformation.hpp"
#include "gpd/oracle.hpp"
