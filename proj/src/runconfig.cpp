#include "openxxz/algebra_core.hpp"
