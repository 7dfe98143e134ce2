#pragma once

#include "miqp/bnb.hpp"
#include "miqp/dual.hpp"
#include "miqp/errors.hpp"
#include "miqp/instance_io.hpp"
#include "miqp/linalg.hpp"
#include "miqp/qp.hpp"
