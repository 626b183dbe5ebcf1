#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace surgery {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace surgery
