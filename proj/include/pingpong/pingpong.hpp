// Umbrella header.

#pragma once

#include "pingpong/boundary.hpp"
#include "pingpong/certify.hpp"
#include "pingpong/endpoint.hpp"
#include "pingpong/errors.hpp"
#include "pingpong/isometry.hpp"
#include "pingpong/matrix2.hpp"
#include "pingpong/model.hpp"
#include "pingpong/parallel.hpp"
#include "pingpong/partner.hpp"
#include "pingpong/rational.hpp"
#include "pingpong/space.hpp"
#include "pingpong/word.hpp"
