#include "keller/coeff_table.hpp"

#include <algorithm>

#include "keller/errors.hpp"

namespace keller {

CoeffTable::CoeffTable(std::size_t n, unsigned m) : n_(n), m_(m) {
  if (n == 0) throw DimensionError("coefficient table needs at least one row");
  if (m == 0) throw DimensionError("maximum degree must be at least 1");
  data_.assign(n * (m - 1), Rational(0));
}

CoeffTable CoeffTable::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) throw DimensionError("coefficient table needs at least one row");
  const std::size_t width = rows.front().size();
  CoeffTable t(rows.size(), static_cast<unsigned>(width + 1));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != width) throw DimensionError("coefficient rows have different lengths");
    for (std::size_t j = 0; j < width; ++j) t.at(k, static_cast<unsigned>(j + 2)) = rows[k][j];
  }
  return t;
}

std::size_t CoeffTable::index(std::size_t k, unsigned l) const {
  if (k >= n_ || l < 2 || l > m_) throw DimensionError("coefficient index out of range");
  return k * (m_ - 1) + (l - 2);
}

std::vector<Rational> CoeffTable::row(std::size_t k) const {
  std::vector<Rational> out;
  for (unsigned l = 2; l <= m_; ++l) out.push_back(at(k, l));
  return out;
}

std::vector<Rational> CoeffTable::column(unsigned l) const {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < n_; ++k) out.push_back(at(k, l));
  return out;
}

Rational CoeffTable::column_sum(unsigned l) const {
  Rational s(0);
  for (std::size_t k = 0; k < n_; ++k) s += at(k, l);
  return s;
}

bool CoeffTable::has_zero_column_sums() const {
  for (unsigned l = 2; l <= m_; ++l) {
    if (column_sum(l) != 0) return false;
  }
  return true;
}

bool CoeffTable::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

CoeffTable CoeffTable::operator-() const {
  CoeffTable out(*this);
  for (auto& q : out.data_) q = -q;
  return out;
}

}  // namespace keller
