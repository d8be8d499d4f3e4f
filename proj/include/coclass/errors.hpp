#pragma once

#include <stdexcept>
#include <string>

namespace coclass {

/// A configured size limit (group order, matrix side, degree) was exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kEnumerationBudget = std::size_t{1} << 20;

}  // namespace coclass
