#include "acm3/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace acm3 {

namespace {

thread_local int t_order_budget = kMaxJetOrder;

std::uint64_t monomial_key(std::span<const std::size_t> sorted_axes, std::size_t dim) {
  std::uint64_t key = sorted_axes.size();
  for (auto a : sorted_axes) key = key * (dim + 1) + (a + 1);
  return key;
}

}  // namespace

int order_budget() noexcept { return t_order_budget; }

ScopedOrderBudget::ScopedOrderBudget(int budget) : previous_(t_order_budget) {
  if (budget < 0 || budget > kMaxJetOrder)
    throw std::invalid_argument("order budget must lie in [0, " + std::to_string(kMaxJetOrder) + "]");
  t_order_budget = budget;
}

ScopedOrderBudget::~ScopedOrderBudget() { t_order_budget = previous_; }

void require_order(int order) {
  if (order < 0) throw std::invalid_argument("negative jet order");
  if (order > t_order_budget)
    throw OrderBudgetExceeded("jet order " + std::to_string(order) + " exceeds budget " +
                              std::to_string(t_order_budget));
}

ChartPoint::ChartPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double c : coords_)
    if (!std::isfinite(c)) throw std::invalid_argument("chart point has a non-finite coordinate");
}

ChartPoint::ChartPoint(std::initializer_list<double> coords)
    : ChartPoint(std::vector<double>(coords)) {}

// ---------------------------------------------------------------------------
// JetLayout
// ---------------------------------------------------------------------------

struct JetLayoutRegistry {
  static const JetLayout& get(std::size_t dim) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<JetLayout>> layouts;
    std::lock_guard lock(mutex);
    auto& slot = layouts[dim];
    if (!slot) slot.reset(new JetLayout(dim));
    return *slot;
  }
};

const JetLayout& JetLayout::for_dim(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("jet dimension must be positive");
  if (dim > 64) throw std::invalid_argument("jet dimension too large for dense storage");
  return JetLayoutRegistry::get(dim);
}

JetLayout::JetLayout(std::size_t dim) : dim_(dim) {
  // Enumerate sorted axis tuples by degree.
  std::vector<std::vector<std::size_t>> monomials;
  monomials.push_back({});
  offsets_.push_back(0);
  offsets_.push_back(1);
  for (int deg = 1; deg <= kMaxJetOrder; ++deg) {
    std::vector<std::size_t> tuple(static_cast<std::size_t>(deg), 0);
    while (true) {
      monomials.push_back(tuple);
      // next non-decreasing tuple
      int pos = deg - 1;
      while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == dim - 1) --pos;
      if (pos < 0) break;
      auto v = tuple[static_cast<std::size_t>(pos)] + 1;
      for (auto p = static_cast<std::size_t>(pos); p < tuple.size(); ++p) tuple[p] = v;
    }
    offsets_.push_back(monomials.size());
  }

  std::map<std::uint64_t, std::size_t> lookup;
  axes_.resize(monomials.size());
  degree_.resize(monomials.size());
  factorial_.resize(monomials.size());
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    const auto& m = monomials[i];
    degree_[i] = static_cast<int>(m.size());
    axes_[i].fill(0);
    for (std::size_t k = 0; k < m.size(); ++k) axes_[i][k] = static_cast<std::uint16_t>(m[k]);
    double f = 1.0;
    std::size_t run = 1;
    for (std::size_t k = 1; k <= m.size(); ++k) {
      if (k < m.size() && m[k] == m[k - 1]) {
        ++run;
      } else {
        for (std::size_t r = 2; r <= run; ++r) f *= static_cast<double>(r);
        run = 1;
      }
    }
    factorial_[i] = f;
    lookup[monomial_key(m, dim)] = i;
  }

  raised_.assign(monomials.size() * dim, -1);
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (degree_[i] == kMaxJetOrder) continue;
    for (std::size_t a = 0; a < dim; ++a) {
      auto m = monomials[i];
      m.insert(std::upper_bound(m.begin(), m.end(), a), a);
      raised_[i * dim + a] = static_cast<std::ptrdiff_t>(lookup.at(monomial_key(m, dim)));
    }
  }

  for (std::size_t i = 0; i < monomials.size(); ++i) {
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      if (degree_[i] + degree_[j] > kMaxJetOrder) continue;
      std::vector<std::size_t> m = monomials[i];
      m.insert(m.end(), monomials[j].begin(), monomials[j].end());
      std::sort(m.begin(), m.end());
      products_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           static_cast<std::uint32_t>(lookup.at(monomial_key(m, dim)))});
    }
  }
  std::stable_sort(products_.begin(), products_.end(), [this](const Product& a, const Product& b) {
    return degree_[a.out] < degree_[b.out];
  });
  product_counts_.assign(kMaxJetOrder + 1, 0);
  for (const auto& p : products_)
    for (int k = degree_[p.out]; k <= kMaxJetOrder; ++k) ++product_counts_[static_cast<std::size_t>(k)];
}

std::span<const std::uint16_t> JetLayout::axes(std::size_t index) const {
  return {axes_[index].data(), static_cast<std::size_t>(degree_[index])};
}

int JetLayout::exponent(std::size_t index, std::size_t axis) const {
  auto ax = axes(index);
  return static_cast<int>(std::count(ax.begin(), ax.end(), axis));
}

std::size_t JetLayout::index_of(std::span<const std::size_t> axes) const {
  if (axes.size() > static_cast<std::size_t>(kMaxJetOrder))
    throw OrderBudgetExceeded("multi-index degree exceeds maximum jet order");
  std::vector<std::size_t> sorted(axes.begin(), axes.end());
  for (auto a : sorted)
    if (a >= dim_) throw std::out_of_range("axis index out of range");
  std::sort(sorted.begin(), sorted.end());
  std::size_t idx = 0;
  for (auto a : sorted) idx = static_cast<std::size_t>(raised(idx, a));
  return idx;
}

std::span<const JetLayout::Product> JetLayout::products(int order) const {
  return {products_.data(), product_counts_.at(static_cast<std::size_t>(order))};
}

// ---------------------------------------------------------------------------
// Jet
// ---------------------------------------------------------------------------

Jet::Jet(const JetLayout* layout, int order)
    : layout_(layout), order_(order), coeffs_(layout->size(order), 0.0) {}

Jet::Jet(std::size_t dim, int order) : Jet(&JetLayout::for_dim(dim), order) {
  if (order < 0 || order > kMaxJetOrder) throw OrderBudgetExceeded("jet order out of range");
}

Jet Jet::constant(std::size_t dim, int order, double value) {
  Jet j(dim, order);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(std::size_t axis, const ChartPoint& p, int order) {
  if (axis >= p.dim()) throw std::out_of_range("coordinate axis out of range");
  Jet j(p.dim(), order);
  j.coeffs_[0] = p[axis];
  if (order >= 1) j.coeffs_[1 + axis] = 1.0;
  return j;
}

double Jet::partial(std::initializer_list<std::size_t> axes) const {
  return partial(std::span<const std::size_t>(axes.begin(), axes.size()));
}

double Jet::partial(std::span<const std::size_t> axes) const {
  if (static_cast<int>(axes.size()) > order_)
    throw OrderBudgetExceeded("requested derivative exceeds jet order");
  auto idx = layout_->index_of(axes);
  return coeffs_[idx] * layout_->factorial(idx);
}

Jet Jet::truncate(int order) const {
  if (order > order_) throw OrderBudgetExceeded("cannot raise jet order by truncation");
  if (order < 0) throw std::invalid_argument("negative jet order");
  Jet r(layout_, order);
  std::copy_n(coeffs_.begin(), r.coeffs_.size(), r.coeffs_.begin());
  return r;
}

Jet Jet::derivative(std::size_t axis) const {
  if (order_ < 1) throw OrderBudgetExceeded("derivative of an order-0 jet");
  if (axis >= dim()) throw std::out_of_range("axis index out of range");
  Jet r(layout_, order_ - 1);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    auto up = static_cast<std::size_t>(layout_->raised(i, axis));
    r.coeffs_[i] = static_cast<double>(layout_->exponent(i, axis) + 1) * coeffs_[up];
  }
  return r;
}

void Jet::align_with(const Jet& rhs) {
  if (layout_ != rhs.layout_) throw std::invalid_argument("jet dimension mismatch");
  if (rhs.order_ < order_) {
    order_ = rhs.order_;
    coeffs_.resize(layout_->size(order_));
  }
}

Jet& Jet::operator+=(const Jet& rhs) {
  align_with(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  align_with(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator+=(double rhs) {
  coeffs_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  coeffs_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (auto& c : coeffs_) c *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) throw std::domain_error("jet division by zero scalar");
  for (auto& c : coeffs_) c /= rhs;
  return *this;
}

Jet operator-(Jet a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.layout_ != b.layout_) throw std::invalid_argument("jet dimension mismatch");
  const int order = std::min(a.order_, b.order_);
  Jet r(a.layout_, order);
  const double* pa = a.coeffs_.data();
  const double* pb = b.coeffs_.data();
  double* pr = r.coeffs_.data();
  for (const auto& t : a.layout_->products(order)) pr[t.out] += pa[t.lhs] * pb[t.rhs];
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet operator/(double a, const Jet& b) { return reciprocal(b) * a; }

Jet compose_univariate(const Jet& x, std::span<const double> taylor) {
  // f(x0 + h) = sum_k a_k h^k with h nilpotent of degree order+1 (Horner).
  const auto terms = std::min<std::size_t>(taylor.size(), static_cast<std::size_t>(x.order_) + 1);
  Jet h = x;
  h.coeffs_[0] = 0.0;
  Jet r = Jet::constant(x.dim(), x.order_, taylor[terms - 1]);
  for (std::size_t k = terms - 1; k-- > 0;) {
    r = r * h;
    r.coeffs_[0] += taylor[k];
  }
  return r;
}

Jet reciprocal(const Jet& x) {
  const double x0 = x.value();
  if (x0 == 0.0) throw std::domain_error("jet division by a jet with zero value part");
  std::array<double, kMaxJetOrder + 1> t{};
  double p = 1.0 / x0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p /= x0;
  }
  return compose_univariate(x, t);
}

Jet sqrt(const Jet& x) {
  const double x0 = x.value();
  if (!(x0 > 0.0)) throw std::domain_error("jet sqrt of a nonpositive value part");
  const double s = std::sqrt(x0);
  const std::array<double, kMaxJetOrder + 1> t{s, 0.5 / s, -0.125 / (s * x0),
                                               0.0625 / (s * x0 * x0)};
  return compose_univariate(x, t);
}

Jet square(const Jet& x) { return x * x; }

Jet substitute_linear(const Jet& f, std::span<const double> a) {
  const std::size_t m = f.dim();
  if (a.size() != m * m) throw std::invalid_argument("substitution matrix has wrong size");
  const int order = f.order();
  const auto& layout = f.layout();
  // t_i = sum_j A_ij dw_j
  std::vector<Jet> t;
  t.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Jet ti(m, order);
    if (order >= 1)
      for (std::size_t j = 0; j < m; ++j) ti.coefficients()[1 + j] = a[i * m + j];
    t.push_back(std::move(ti));
  }
  auto c = f.coefficients();
  Jet r = Jet::constant(m, order, c[0]);
  for (std::size_t idx = 1; idx < c.size(); ++idx) {
    if (c[idx] == 0.0) continue;
    auto ax = layout.axes(idx);
    Jet term = t[ax[0]];
    for (std::size_t k = 1; k < ax.size(); ++k) term = term * t[ax[k]];
    r += term * c[idx];
  }
  return r;
}

std::vector<Jet> lift_coordinates(const ChartPoint& p, int order) {
  std::vector<Jet> u;
  u.reserve(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) u.push_back(Jet::variable(i, p, order));
  return u;
}

Jet jet_lift_coordinate(std::size_t axis, const ChartPoint& p, int order) {
  return Jet::variable(axis, p, order);
}

}  // namespace acm3
