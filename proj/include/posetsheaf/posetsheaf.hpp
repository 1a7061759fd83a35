#pragma once

#include "posetsheaf/covering_io.hpp"
#include "posetsheaf/dlattice_io.hpp"
#include "posetsheaf/order_io.hpp"
#include "posetsheaf/projz2_io.hpp"
#include "posetsheaf/sheaf_io.hpp"
#include "posetsheaf/toeplitz/io.hpp"
