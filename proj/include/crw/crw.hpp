#pragma once

#include "crw/errors.hpp"
#include "crw/jacobi.hpp"
#include "crw/matrix.hpp"
#include "crw/model.hpp"
#include "crw/simulate.hpp"
#include "crw/spectral.hpp"
#include "crw/verify.hpp"
