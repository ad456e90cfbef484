#pragma once

#include "schurkit/error.hpp"
#include "schurkit/io.hpp"
#include "schurkit/lr.hpp"
#include "schurkit/partition.hpp"
#include "schurkit/semigroup.hpp"
