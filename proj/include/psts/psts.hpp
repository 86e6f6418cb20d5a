#pragma once

#include "psts/confocal.hpp"
#include "psts/critical.hpp"
#include "psts/dual.hpp"
#include "psts/elliptic.hpp"
#include "psts/errors.hpp"
#include "psts/surface.hpp"
#include "psts/tangles.hpp"
#include "psts/vec.hpp"
