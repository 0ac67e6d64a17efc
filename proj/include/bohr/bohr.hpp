#pragma once

#include <bohr/harness.hpp>
#include <bohr/inequality.hpp>
#include <bohr/operators.hpp>
#include <bohr/quadrature.hpp>
#include <bohr/radius.hpp>
#include <bohr/recurrences.hpp>
#include <bohr/series.hpp>
#include <bohr/weights.hpp>
