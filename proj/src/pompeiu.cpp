#include "vekua/pompeiu.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "vekua/descriptor.hpp"
#include "vekua/error.hpp"

namespace vekua {

namespace {

constexpr double kMinLeafDivisions = 16.0;
constexpr double kLeafScale = 4.0;
constexpr int kCorrectionCells = 3;
constexpr std::size_t kBlock = 16;

using v4d = double __attribute__((vector_size(32)));

inline v4d load4(const double* p) {
  v4d v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

inline v4d splat(double x) { return v4d{x, x, x, x}; }

double x_atan(double x, double y) { return x == 0.0 ? 0.0 : x * std::atan(y / x); }
double half_log(double a, double r2) { return a == 0.0 ? 0.0 : 0.5 * a * std::log(r2); }

// Antiderivative F with F_xy = 1/(x + iy) = (x - iy)/(x^2 + y^2).
Complex corner(double x, double y) {
  const double r2 = x * x + y * y;
  const double p = x_atan(x, y) + half_log(y, r2);
  const double q = x_atan(y, x) + half_log(x, r2);
  return {p, -q};
}

bool in_box(Complex offset, double half) {
  return std::abs(offset.real()) <= half && std::abs(offset.imag()) <= half;
}

}  // namespace

Complex cell_cauchy_integral(Complex offset, double h) {
  const double x1 = offset.real() - 0.5 * h, x2 = offset.real() + 0.5 * h;
  const double y1 = offset.imag() - 0.5 * h, y2 = offset.imag() + 0.5 * h;
  return corner(x2, y2) - corner(x1, y2) - corner(x2, y1) + corner(x1, y1);
}

PompeiuOperator::PompeiuOperator(const Grid& grid, SingularRule rule, int near_cells)
    : grid_(grid), rule_(rule), near_(std::max(0, near_cells)), leaf_min_(0.0) {
  const double h = grid_.spacing();
  const std::size_t nx = grid_.nx(), ny = grid_.ny(), n = grid_.size();
  if (grid_.domain_indices().empty()) fail(ErrorCode::EmptyDomain, "grid has no domain nodes");
  // Leaves shrink like h^2 relative to the domain size so the boundary
  // staircase does not limit the order of the quadrature.
  const Box box = grid_.domain().bounding_box();
  const double extent = std::max(box.x_hi - box.x_lo, box.y_hi - box.y_lo);
  leaf_min_ = h * std::min(1.0 / kMinLeafDivisions, kLeafScale * h / extent);

  const auto valid = [&](long i, long j) {
    return i >= 0 && j >= 0 && i < static_cast<long>(nx) && j < static_cast<long>(ny);
  };
  const auto any_neighbor = [&](std::size_t i, std::size_t j, auto pred) {
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const long ii = static_cast<long>(i) + di, jj = static_cast<long>(j) + dj;
        if (valid(ii, jj) && pred(grid_.index(ii, jj))) return true;
      }
    }
    return false;
  };

  areas_.assign(n, 0.0);
  full_.assign(n, 0);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = grid_.index(i, j);
      if (!any_neighbor(i, j, [&](std::size_t q) { return grid_.in_domain(q); })) continue;
      PartialCell cell{k, n, {}, 0.0, {}};
      resolve(grid_.point(k), h, cell.leaves);
      if (cell.leaves.empty()) continue;
      if (cell.leaves.size() == 1 && cell.leaves[0].size == h && grid_.in_domain(k)) {
        full_[k] = 1;
        areas_[k] = h * h;
        continue;
      }
      for (const auto& leaf : cell.leaves) {
        const double a = leaf.size * leaf.size;
        cell.area += a;
        cell.centroid += a * leaf.center;
      }
      cell.centroid /= cell.area;
      if (grid_.in_domain(k)) {
        cell.source = k;
      } else {
        double best = kInfinity;
        for (int dj = -1; dj <= 1; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            const long ii = static_cast<long>(i) + di, jj = static_cast<long>(j) + dj;
            if (!valid(ii, jj)) continue;
            const std::size_t q = grid_.index(ii, jj);
            if (!grid_.in_domain(q)) continue;
            const double d = std::abs(grid_.point(q) - cell.centroid);
            if (d < best) {
              best = d;
              cell.source = q;
            }
          }
        }
      }
      areas_[k] = cell.area;
      partial_.push_back(std::move(cell));
    }
  }
  for (const auto& p : partial_) {
    pcx_.push_back(p.centroid.real());
    pcy_.push_back(p.centroid.imag());
  }

  // Near-field corrections for partial cells at lattice targets.
  for (std::size_t q = 0; q < partial_.size(); ++q) {
    const auto& p = partial_[q];
    const long ci = static_cast<long>(grid_.column(p.cell)), cj = static_cast<long>(grid_.row(p.cell));
    for (long dj = -kCorrectionCells; dj <= kCorrectionCells; ++dj) {
      for (long di = -kCorrectionCells; di <= kCorrectionCells; ++di) {
        if (!valid(ci + di, cj + dj)) continue;
        const std::size_t t = grid_.index(ci + di, cj + dj);
        if (!grid_.in_domain(t)) continue;
        const Complex z = grid_.point(t);
        corrections_.push_back({t, q, near_term(p, z), centroid_term(p, z)});
      }
    }
  }
  std::stable_sort(corrections_.begin(), corrections_.end(),
                   [](const Correction& a, const Correction& b) { return a.target < b.target; });

  // Reversed kernel rows: entry (dj + ny - 1, e + nx - 1) holds the kernel at
  // source offset (-e, dj) so that a block of consecutive targets reads a
  // contiguous slice.
  table_width_ = 2 * nx - 1 + kBlock;
  const std::size_t rows = 2 * ny - 1;
  table_re_.assign(rows * table_width_, 0.0);
  table_im_.assign(rows * table_width_, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double dj = static_cast<double>(static_cast<long>(r) - static_cast<long>(ny - 1));
    for (std::size_t c = 0; c < 2 * nx - 1; ++c) {
      const double e = static_cast<double>(static_cast<long>(c) - static_cast<long>(nx - 1));
      const Complex kv = full_kernel(Complex{-e * h, dj * h});
      table_re_[r * table_width_ + c] = kv.real();
      table_im_[r * table_width_ + c] = kv.imag();
    }
  }
  row_lo_.assign(ny, 0);
  row_hi_.assign(ny, 0);
  for (std::size_t j = 0; j < ny; ++j) {
    std::size_t lo = nx, hi = 0;
    for (std::size_t i = 0; i < nx; ++i) {
      if (full_[grid_.index(i, j)]) {
        lo = std::min(lo, i);
        hi = i + 1;
      }
    }
    if (lo < hi) {
      row_lo_[j] = lo;
      row_hi_[j] = hi;
    }
  }
}

Complex PompeiuOperator::full_kernel(Complex offset) const {
  const double h = grid_.spacing();
  if (rule_ == SingularRule::ExactConstantCell) {
    if (in_box(offset, (near_ + 0.5) * h)) return cell_cauchy_integral(offset, h) / (h * h);
  } else if (in_box(offset, 0.5 * h)) {
    return {};
  }
  return 1.0 / offset;
}

Complex PompeiuOperator::centroid_term(const PartialCell& p, Complex z) const {
  const Complex d = p.centroid - z;
  const double d2 = std::norm(d);
  const double floor = 1e-9 * grid_.spacing();
  return d2 > floor * floor ? p.area * std::conj(d) / d2 : Complex{};
}

void PompeiuOperator::resolve(Complex center, double size, std::vector<Leaf>& out) const {
  const double reach = size * std::numbers::sqrt2 / 2.0;
  double slack = kInfinity;
  for (const auto& c : grid_.domain().constraints(center)) {
    if (c.slack <= -reach) return;
    slack = std::min(slack, c.slack);
  }
  if (slack >= reach) {
    out.push_back({center, size});
    return;
  }
  if (size <= leaf_min_) {
    if (slack > 0.0) out.push_back({center, size});
    return;
  }
  const double q = size / 4.0;
  for (const Complex d : {Complex{-q, -q}, Complex{q, -q}, Complex{-q, q}, Complex{q, q}}) {
    resolve(center + d, size / 2.0, out);
  }
}

Complex PompeiuOperator::near_term(const PartialCell& p, Complex z) const {
  Complex acc{};
  if (rule_ == SingularRule::CellExclusion) {
    if (in_box(grid_.point(p.cell) - z, 0.5 * grid_.spacing())) return {};
    for (const auto& leaf : p.leaves) acc += leaf.size * leaf.size / (leaf.center - z);
    return acc;
  }
  for (const auto& leaf : p.leaves) {
    const Complex d = leaf.center - z;
    acc += in_box(d, 2.5 * leaf.size) ? cell_cauchy_integral(d, leaf.size) : leaf.size * leaf.size / d;
  }
  return acc;
}

bool PompeiuOperator::is_near(const PartialCell& p, Complex z) const {
  return in_box(grid_.point(p.cell) - z, (kCorrectionCells + 0.5) * grid_.spacing());
}

void PompeiuOperator::check_input(std::span<const Complex> g) const {
  if (g.size() != grid_.size()) fail(ErrorCode::InvalidArgument, "grid function size does not match grid");
  for (auto k : grid_.domain_indices()) {
    if (!has_value(g[k])) {
      const Complex z = grid_.point(k);
      fail(ErrorCode::InvalidArgument, "integrand is not finite at (" + format_number(z.real()) + ", " +
                                           format_number(z.imag()) + ")");
    }
  }
}

// out[t] = sum over full cells s of table(s - t) src[s] for every domain node t,
// summed in lattice order of s.
void PompeiuOperator::correlate(const std::vector<double>& table_re, const std::vector<double>& table_im,
                                const std::vector<double>& src_re, const std::vector<double>& src_im,
                                std::vector<double>& out_re, std::vector<double>& out_im) const {
  const std::size_t nx = grid_.nx(), ny = grid_.ny(), tw = table_width_;
  out_re.assign(grid_.size(), 0.0);
  out_im.assign(grid_.size(), 0.0);
  parallel_for(ny, [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t tj = row_begin; tj < row_end; ++tj) {
      std::size_t tlo = nx, thi = 0;
      for (std::size_t i = 0; i < nx; ++i) {
        if (grid_.in_domain(grid_.index(i, tj))) {
          tlo = std::min(tlo, i);
          thi = i + 1;
        }
      }
      for (std::size_t t0 = tlo; t0 < thi; t0 += kBlock) {
        v4d ar[4] = {}, ai[4] = {};
        for (std::size_t sj = 0; sj < ny; ++sj) {
          const std::size_t lo = row_lo_[sj], hi = row_hi_[sj];
          if (lo >= hi) continue;
          const double* kr = table_re.data() + (sj + ny - 1 - tj) * tw + t0 + nx - 1;
          const double* ki = table_im.data() + (sj + ny - 1 - tj) * tw + t0 + nx - 1;
          const double* gr = src_re.data() + sj * nx;
          const double* gi = src_im.data() + sj * nx;
          for (std::size_t si = lo; si < hi; ++si) {
            const v4d br = splat(gr[si]), bi = splat(gi[si]);
            for (int v = 0; v < 4; ++v) {
              const v4d r = load4(kr - si + 4 * v), m = load4(ki - si + 4 * v);
              ar[v] += r * br - m * bi;
              ai[v] += r * bi + m * br;
            }
          }
        }
        for (std::size_t l = 0; l < kBlock && t0 + l < thi; ++l) {
          const std::size_t k = grid_.index(t0 + l, tj);
          out_re[k] = ar[l / 4][l % 4];
          out_im[k] = ai[l / 4][l % 4];
        }
      }
    }
  });
}

GridFunction PompeiuOperator::apply_on_grid(std::span<const Complex> g) const {
  check_input(g);
  const double hh = grid_.spacing() * grid_.spacing();
  const std::size_t n = grid_.size();
  std::vector<double> sr(n, 0.0), si(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (full_[k]) {
      sr[k] = hh * g[k].real();
      si[k] = hh * g[k].imag();
    }
  }
  std::vector<double> fr, fi;
  correlate(table_re_, table_im_, sr, si, fr, fi);

  const std::size_t np = partial_.size();
  std::vector<double> pr(np), pi(np);
  for (std::size_t q = 0; q < np; ++q) {
    const Complex v = partial_[q].area * g[partial_[q].source];
    pr[q] = v.real();
    pi[q] = v.imag();
  }
  const double floor = 1e-9 * grid_.spacing();
  const double floor2 = floor * floor;
  const auto& targets = grid_.domain_indices();
  GridFunction out(n, kMissing);
  parallel_for(targets.size(), [&](std::size_t b, std::size_t e) {
    auto corr = std::lower_bound(corrections_.begin(), corrections_.end(), targets[b],
                                 [](const Correction& c, std::size_t t) { return c.target < t; });
    for (std::size_t t = b; t < e; ++t) {
      const std::size_t k = targets[t];
      const Complex z = grid_.point(k);
      const double zx = z.real(), zy = z.imag();
      double ar[4] = {0, 0, 0, 0}, ai[4] = {0, 0, 0, 0};
      std::size_t q = 0;
      for (; q + 4 <= np; q += 4) {
        for (int l = 0; l < 4; ++l) {
          const double dx = pcx_[q + l] - zx, dy = pcy_[q + l] - zy;
          const double d2 = dx * dx + dy * dy;
          const double inv = d2 > floor2 ? 1.0 / d2 : 0.0;
          ar[l] += (pr[q + l] * dx + pi[q + l] * dy) * inv;
          ai[l] += (pi[q + l] * dx - pr[q + l] * dy) * inv;
        }
      }
      for (; q < np; ++q) {
        const double dx = pcx_[q] - zx, dy = pcy_[q] - zy;
        const double d2 = dx * dx + dy * dy;
        const double inv = d2 > floor2 ? 1.0 / d2 : 0.0;
        ar[0] += (pr[q] * dx + pi[q] * dy) * inv;
        ai[0] += (pi[q] * dx - pr[q] * dy) * inv;
      }
      Complex acc{fr[k] + ((ar[0] + ar[1]) + (ar[2] + ar[3])), fi[k] + ((ai[0] + ai[1]) + (ai[2] + ai[3]))};
      for (; corr != corrections_.end() && corr->target == k; ++corr) {
        acc += (corr->accurate - corr->centroid) * g[partial_[corr->partial].source];
      }
      out[k] = -acc / std::numbers::pi;
    }
  });
  return out;
}

std::vector<Complex> PompeiuOperator::apply(std::span<const Complex> g, std::span<const Complex> targets) const {
  check_input(g);
  for (const Complex& z : targets) {
    if (grid_.domain().classify(z) == Membership::Outside) {
      fail(ErrorCode::TargetOutsideDomain,
           "target (" + format_number(z.real()) + ", " + format_number(z.imag()) + ") lies outside the domain");
    }
  }
  const double hh = grid_.spacing() * grid_.spacing();
  std::vector<std::size_t> full;
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    if (full_[k]) full.push_back(k);
  }
  std::vector<Complex> out(targets.size());
  parallel_for(targets.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t t = b; t < e; ++t) {
      const Complex z = targets[t];
      Complex acc{};
      for (auto k : full) acc += hh * g[k] * full_kernel(grid_.point(k) - z);
      for (const auto& p : partial_) acc += (is_near(p, z) ? near_term(p, z) : centroid_term(p, z)) * g[p.source];
      out[t] = -acc / std::numbers::pi;
    }
  });
  return out;
}

double PompeiuOperator::grid_operator_norm() const {
  const double hh = grid_.spacing() * grid_.spacing();
  const std::size_t n = grid_.size();
  std::vector<double> mag(table_re_.size()), zeros(table_re_.size(), 0.0);
  for (std::size_t q = 0; q < mag.size(); ++q) mag[q] = std::hypot(table_re_[q], table_im_[q]);
  std::vector<double> sr(n, 0.0), si(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (full_[k]) sr[k] = hh;
  }
  std::vector<double> fr, fi;
  correlate(mag, zeros, sr, si, fr, fi);
  double best = 0.0;
  auto corr = corrections_.begin();
  for (auto k : grid_.domain_indices()) {
    const Complex z = grid_.point(k);
    double s = fr[k];
    for (const auto& p : partial_) s += std::abs(centroid_term(p, z));
    for (; corr != corrections_.end() && corr->target == k; ++corr) {
      s += std::abs(corr->accurate) - std::abs(corr->centroid);
    }
    best = std::max(best, s);
  }
  return best / std::numbers::pi;
}

TransformResult pompeiu_transform(const Grid& grid, std::span<const Complex> g, std::span<const Complex> targets,
                                  SingularRule rule) {
  PompeiuOperator op(grid, rule);
  return TransformResult{op.apply(g, targets), grid.spacing(), rule};
}

}  // namespace vekua
