#pragma once

#include "kqj2/diffproj.hpp"
#include "kqj2/errors.hpp"
#include "kqj2/field.hpp"
#include "kqj2/io.hpp"
#include "kqj2/koszul.hpp"
#include "kqj2/linear_system.hpp"
#include "kqj2/matrix.hpp"
#include "kqj2/quiver.hpp"
#include "kqj2/rep.hpp"
