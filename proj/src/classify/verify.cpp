#include <Eigen/Dense>

#include <atomic>
#include <mutex>
#include <cmath>
#include <random>
#include <thread>

#include "plastsym/classify.hpp"
#include "plastsym/eval.hpp"

namespace plastsym::cls {

namespace {

std::map<std::string, double> sample_point(std::mt19937_64& rng, const sym::SampleBox& box) {
  std::map<std::string, double> p;
  for (const auto& name : vf::coord_names()) {
    auto [lo, hi] = box.range_for(name, true);
    p[name] = std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  for (const auto& [name, v] : box.fixed) p[name] = v;
  return p;
}

// Nearby rational with a small denominator, when there is one.
Expr snap(double c) {
  for (long den = 1; den <= 64; ++den) {
    double num = std::round(c * static_cast<double>(den));
    if (std::abs(num / static_cast<double>(den) - c) < 1e-11 * std::max(1.0, std::abs(c))) {
      return Expr(sym::Rational(static_cast<long>(num), den));
    }
  }
  return Expr::from_double(c);
}

}  // namespace

VerifyOptions::VerifyOptions() {
  zero.box.fixed["rho"] = 1.0;
  zero.tol = 1e-9;
}

std::vector<VectorField> Subalgebra::fields() const {
  if (!raw_fields.empty()) return raw_fields;
  std::vector<VectorField> out;
  for (const auto& e : basis) out.push_back(vf::instantiate(e).simplified());
  return out;
}

PairResult fit_in_span(const VectorField& target, const std::vector<VectorField>& basis,
                       const VerifyOptions& o, bool modulo_s) {
  PairResult r;
  std::vector<int> comps;
  for (int i = 0; i < vf::kDim; ++i) {
    if (!(modulo_s && i == vf::SIGMA)) comps.push_back(i);
  }
  const int k = static_cast<int>(basis.size());
  if (k > 0) {
    std::mt19937_64 rng(o.zero.seed ^ 0x9e3779b97f4a7c15ULL);
    const int rows = o.fit_points * static_cast<int>(comps.size());
    Eigen::MatrixXd A(rows, k);
    Eigen::VectorXd b(rows);
    int row = 0;
    for (int p = 0; p < o.fit_points; ++p) {
      auto pt = sample_point(rng, o.zero.box);
      for (int c : comps) {
        b(row) = sym::evaluate(target.c[c], pt);
        for (int j = 0; j < k; ++j) A(row, j) = sym::evaluate(basis[j].c[c], pt);
        ++row;
      }
    }
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    for (int j = 0; j < k; ++j) r.coefficients.push_back(x(j));
  }
  VectorField residual = target;
  for (int j = 0; j < k; ++j) residual = residual - snap(r.coefficients[j]) * basis[j];
  residual = residual.simplified();
  if (modulo_s) {
    r.in_span = adj::in_s(residual, o.zero);
    r.max_abs = r.in_span ? 0.0 : 1.0;
  } else {
    auto z = vf::field_is_zero(residual, o.zero);
    r.in_span = z.zero;
    r.max_abs = z.max_abs;
  }
  return r;
}

SubalgebraReport verify_representative(const Subalgebra& s, const VerifyOptions& o) {
  SubalgebraReport rep;
  rep.label = s.label;
  rep.dim = s.dim();
  const std::vector<VectorField> F = s.fields();
  rep.closed = true;
  for (int i = 0; i < rep.dim; ++i) {
    for (int j = i + 1; j < rep.dim; ++j) {
      PairResult p = fit_in_span(vf::bracket(F[i], F[j]).simplified(), F, o, s.modulo_s);
      p.i = i;
      p.j = j;
      rep.pairs.push_back(p);
      if (!p.in_span && rep.closed) {
        rep.closed = false;
        rep.failing_pair = p;
      }
    }
  }
  if (!s.ideal.empty()) {
    rep.ideal_checked = true;
    std::vector<VectorField> I;
    for (int j : s.ideal) I.push_back(F[j]);
    for (int i = 0; i < rep.dim && rep.ideal_ok; ++i) {
      for (int j : s.ideal) {
        if (!fit_in_span(vf::bracket(F[i], F[j]).simplified(), I, o, s.modulo_s).in_span) {
          rep.ideal_ok = false;
          break;
        }
      }
    }
  }
  if (!s.normalizer.empty() && s.raw_fields.empty()) {
    rep.normalizer_checked = true;
    for (const auto& n : s.normalizer) {
      for (int k = 0; k < rep.dim && rep.normalizer_ok; ++k) {
        VectorField moved = vf::instantiate(adj::ad_closed(n, s.basis[k]).element).simplified();
        if (!fit_in_span(moved, F, o, s.modulo_s).in_span) {
          rep.normalizer_ok = false;
          rep.normalizer_failure = n.label() + " moves " + vf::to_string(s.basis[k]) + " out of the span";
        }
      }
    }
  }
  if (o.throw_on_failure && !rep.closed) {
    const auto& p = *rep.failing_pair;
    throw ClosureFailure(s.label + ": bracket of basis elements " + std::to_string(p.i) + " and " +
                             std::to_string(p.j) + " leaves the span",
                         p.i, p.j);
  }
  return rep;
}

std::vector<SubalgebraReport> verify_all(const std::vector<Subalgebra>& list, const VerifyOptions& o) {
  std::vector<SubalgebraReport> out(list.size());
  std::atomic<std::size_t> next{0};
  unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex m;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < list.size(); i = next++) {
        try {
          out[i] = verify_representative(list[i], o);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace plastsym::cls
