#pragma once

#include "mpole/geometry.hpp"
#include "mpole/harmonics.hpp"
#include "mpole/io.hpp"
#include "mpole/kernels.hpp"
#include "mpole/operators.hpp"
#include "mpole/pipeline.hpp"
#include "mpole/solid.hpp"
#include "mpole/workspace.hpp"
