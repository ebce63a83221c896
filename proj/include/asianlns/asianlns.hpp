#pragma once

#include "basis.hpp"
#include "benchmark_cases.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "market.hpp"
#include "mc.hpp"
#include "model.hpp"
#include "pricer.hpp"
#include "scalar.hpp"
