#include "zeroset/operator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "zeroset/forms.hpp"

namespace zeroset {

SymbolMap::SymbolMap(std::vector<RationalMatrix> matrices) : A(std::move(matrices)) {
  n = A.size();
  if (n == 0) throw std::invalid_argument("symbol needs at least one matrix");
  N = A.front().rows();
  for (const auto& m : A) {
    if (m.rows() != N || m.cols() != N) throw std::invalid_argument("symbol matrices must be N x N");
  }
}

RationalMatrix symbol_at(const SymbolMap& s, std::span<const Rational> xi) {
  if (xi.size() != s.n) throw std::invalid_argument("covector has wrong dimension");
  RationalMatrix out(s.N, s.N);
  for (std::size_t j = 0; j < s.n; ++j) {
    if (xi[j] != 0) out += s.A[j] * xi[j];
  }
  return out;
}

Eigen::MatrixXd symbol_at(const SymbolMap& s, std::span<const double> xi) {
  if (xi.size() != s.n) throw std::invalid_argument("covector has wrong dimension");
  const auto N = static_cast<Eigen::Index>(s.N);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t j = 0; j < s.n; ++j) out += xi[j] * s.A[j].to_eigen();
  return out;
}

VectorPoly apply(const SymbolMap& s, const VectorPoly& phi) {
  if (phi.nvars != s.n || phi.rank() != s.N) {
    throw std::invalid_argument("section does not match the symbol's dimensions");
  }
  VectorPoly out(s.n, s.N);
  for (std::size_t j = 0; j < s.n; ++j) out += s.A[j] * phi.derive(j);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::elliptic: return "elliptic";
    case Verdict::not_elliptic: return "not-elliptic";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

namespace {

struct Patch {
  std::size_t axis;
  double sign;
  std::vector<double> center;  // coordinates on the face, n-1 entries
  double half_side;
};

std::vector<double> face_point(std::size_t n, const Patch& p) {
  std::vector<double> v(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) v[i] = i == p.axis ? p.sign : p.center[k++];
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

double min_singular(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().minCoeff();
}

std::vector<double> normalized(std::vector<double> v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

}  // namespace

EllipticityCertificate is_elliptic(const SymbolMap& s, std::size_t budget) {
  EllipticityCertificate cert;
  const std::size_t n = s.n;
  const auto N = static_cast<Eigen::Index>(s.N);

  Eigen::MatrixXd stacked(N, N * static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    stacked.block(0, static_cast<Eigen::Index>(j) * N, N, N) = s.A[j].to_eigen();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const double lipschitz = svd.singularValues().maxCoeff() * (1.0 + 1e-12);
  cert.lipschitz = lipschitz;
  const double singular_tol = 1e-12 * std::max(lipschitz, 1.0);

  if (n == 1) {
    cert.evaluations = 1;
    Rational det = s.A[0].determinant();
    if (det == 0) {
      cert.verdict = Verdict::not_elliptic;
      cert.witness = {1.0};
      return cert;
    }
    cert.verdict = Verdict::elliptic;
    cert.min_singular_lower_bound = min_singular(s.A[0].to_eigen());
    cert.det_lower_bound = std::abs(det.get_d());
    return cert;
  }

  auto det_at = [&](const std::vector<double>& xi) {
    return symbol_at(s, std::span<const double>(xi)).determinant();
  };
  auto witness_from_sign_change = [&](std::vector<double> a, double fa, std::vector<double> b) {
    // Avoid antipodal endpoints: the chord would pass through the origin.
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += a[i] * b[i];
    if (dot < -0.999999) {
      std::vector<double> mid(n, 0.0);
      mid[(std::max_element(a.begin(), a.end(), [](double x, double y) {
             return std::abs(x) < std::abs(y);
           }) - a.begin() + 1) % n] = 1.0;
      double fm = det_at(mid);
      if (fm == 0.0) return std::pair{mid, fm};
      if ((fm > 0) == (fa > 0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    std::vector<double> lo = a;
    std::vector<double> hi = b;
    std::vector<double> mid(n);
    double fm = fa;
    for (int it = 0; it < 200; ++it) {
      for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
      mid = normalized(mid);
      fm = det_at(mid);
      if (fm == 0.0) break;
      if ((fm > 0) == (fa > 0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return std::pair{mid, fm};
  };

  std::deque<Patch> queue;
  for (std::size_t axis = 0; axis < n; ++axis) {
    for (double sign : {1.0, -1.0}) {
      queue.push_back(Patch{axis, sign, std::vector<double>(n - 1, 0.0), 1.0});
    }
  }
  const double face_dim_root = std::sqrt(static_cast<double>(n - 1));
  double lower = std::numeric_limits<double>::infinity();
  std::vector<double> ref_xi;
  double ref_det = 0.0;

  while (!queue.empty()) {
    if (cert.evaluations >= budget) {
      cert.verdict = Verdict::undecided;
      return cert;
    }
    Patch patch = std::move(queue.front());
    queue.pop_front();
    std::vector<double> xi = face_point(n, patch);
    Eigen::MatrixXd m = symbol_at(s, std::span<const double>(xi));
    ++cert.evaluations;
    double smin = min_singular(m);
    double det = m.determinant();
    if (smin <= singular_tol) {
      cert.verdict = Verdict::not_elliptic;
      cert.witness = xi;
      cert.det_at_witness = det;
      return cert;
    }
    if (ref_xi.empty()) {
      ref_xi = xi;
      ref_det = det;
    } else if ((det > 0) != (ref_det > 0)) {
      auto [w, fw] = witness_from_sign_change(ref_xi, ref_det, xi);
      cert.verdict = Verdict::not_elliptic;
      cert.witness = w;
      cert.det_at_witness = fw;
      return cert;
    }
    // Radial projection from the cube surface onto the sphere is
    // 1-Lipschitz, so the face half-diagonal bounds the chord radius.
    double rho = patch.half_side * face_dim_root;
    double margin = smin - lipschitz * rho;
    if (margin <= singular_tol) {
      // sigma(xi) = sigma(xi_c)(I + E) with |E| <= K_c rho, B_j =
      // sigma(xi_c)^{-1} A_j and K_c the smaller of the norms of the row
      // [B_1 ... B_n] and of the column (B_1; ...; B_n).
      Eigen::MatrixXd B = m.inverse() * stacked;
      Eigen::MatrixXd gram_rows = B * B.transpose();
      Eigen::MatrixXd gram_cols = Eigen::MatrixXd::Zero(N, N);
      for (std::size_t j = 0; j < n; ++j) {
        auto Bj = B.block(0, static_cast<Eigen::Index>(j) * N, N, N);
        gram_cols += Bj.transpose() * Bj;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> er(gram_rows, Eigen::EigenvaluesOnly);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ec(gram_cols, Eigen::EigenvaluesOnly);
      double top = std::min(er.eigenvalues().maxCoeff(), ec.eigenvalues().maxCoeff());
      double local = std::sqrt(std::max(top, 0.0)) * (1.0 + 1e-12);
      double shrink = 1.0 - local * rho;
      if (shrink > 1e-9) margin = std::max(margin, smin * shrink);
    }
    if (margin > singular_tol) {
      lower = std::min(lower, margin);
      continue;
    }
    const std::size_t children = std::size_t{1} << (n - 1);
    double h = patch.half_side / 2.0;
    for (std::size_t c = 0; c < children; ++c) {
      Patch child{patch.axis, patch.sign, patch.center, h};
      for (std::size_t k = 0; k + 1 < n; ++k) child.center[k] += (c >> k & 1U) ? h : -h;
      queue.push_back(std::move(child));
    }
  }
  cert.verdict = Verdict::elliptic;
  cert.min_singular_lower_bound = lower;
  cert.det_lower_bound = std::pow(lower, static_cast<double>(s.N));
  return cert;
}

bool clifford_check(const SymbolMap& s, const RationalMatrix& metric) {
  if (metric.rows() != s.n || metric.cols() != s.n) {
    throw std::invalid_argument("metric must be n x n");
  }
  if (!(metric == metric.transpose())) throw std::invalid_argument("metric must be symmetric");
  const RationalMatrix id = RationalMatrix::identity(s.N);
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t j = i; j < s.n; ++j) {
      RationalMatrix r = s.A[i] * s.A[j] + s.A[j] * s.A[i] + id * (Rational(2) * metric(i, j));
      if (!r.is_zero()) return false;
    }
  }
  return true;
}

VectorPoly leibniz_residual(const SymbolMap& s, const MultiPoly& f, const VectorPoly& phi) {
  VectorPoly sigma_df(phi.nvars, phi.rank());
  for (std::size_t j = 0; j < s.n; ++j) {
    MultiPoly dj = f.derive(j);
    if (dj.is_zero()) continue;
    sigma_df += dj * (s.A[j] * phi);
  }
  return apply(s, f * phi) - f * apply(s, phi) - sigma_df;
}

Nonlinearity no_nonlinearity() {
  Nonlinearity v;
  v.tag = "none";
  v.respects_zero_section = true;
  v.eval = [](std::span<const double>, std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };
  return v;
}

Nonlinearity cubic_dirac(const Rational& H) {
  Nonlinearity v;
  v.tag = "cubic-dirac";
  v.parameter = H;
  v.respects_zero_section = true;
  const double h = H.get_d();
  v.eval = [h](std::span<const double>, std::span<const double> e, std::span<double> out) {
    double sq = 0.0;
    for (double x : e) sq += x * x;
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = -h * sq * e[i];
  };
  return v;
}

SemilinearSpec make_linear(const SymbolMap& s) {
  SemilinearSpec L;
  L.n = s.n;
  L.N = s.N;
  for (const auto& a : s.A) L.A.emplace_back(a, s.n);
  L.B = PolyMatrix(s.N, s.N, s.n);
  L.V = no_nonlinearity();
  return L;
}

bool check_zero_section(const SemilinearSpec& L, std::span<const std::vector<double>> samples,
                        double tol) {
  if (!L.V.eval) return true;
  std::vector<double> zero(L.N, 0.0);
  std::vector<double> out(L.N, 0.0);
  for (const auto& x : samples) {
    L.V.eval(x, zero, out);
    for (double v : out) {
      if (std::abs(v) > tol) return false;
    }
  }
  return true;
}

SymbolMap freeze(const SemilinearSpec& L, std::span<const Rational> p) {
  if (p.size() != L.n) throw std::invalid_argument("freeze point has wrong dimension");
  std::vector<RationalMatrix> frozen;
  frozen.reserve(L.n);
  for (const auto& a : L.A) frozen.push_back(a.evaluate(p));
  return SymbolMap(std::move(frozen));
}

double residual_norm(const SemilinearSpec& L, const SectionEvaluator& phi,
                     std::span<const std::vector<double>> grid) {
  const auto N = static_cast<Eigen::Index>(L.N);
  std::vector<double> value(L.N);
  std::vector<double> jac(L.n * L.N);
  std::vector<double> v_out(L.N);
  const bool constant_a =
      std::all_of(L.A.begin(), L.A.end(), [](const PolyMatrix& m) { return m.is_constant(); });
  const bool has_b = !L.B.is_zero();
  std::vector<Eigen::MatrixXd> a_const;
  if (constant_a) {
    std::vector<double> origin(L.n, 0.0);
    for (const auto& a : L.A) a_const.push_back(a.evaluate(std::span<const double>(origin)));
  }
  double worst = 0.0;
  for (const auto& x : grid) {
    if (x.size() != L.n) throw std::invalid_argument("grid point has wrong dimension");
    phi(x, value, jac);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(N);
    for (std::size_t j = 0; j < L.n; ++j) {
      Eigen::Map<const Eigen::VectorXd> dj(jac.data() + j * L.N, N);
      if (constant_a) {
        r += a_const[j] * dj;
      } else {
        r += L.A[j].evaluate(std::span<const double>(x)) * dj;
      }
    }
    Eigen::Map<const Eigen::VectorXd> val(value.data(), N);
    if (has_b) r += L.B.evaluate(std::span<const double>(x)) * val;
    if (L.V.tag != "none") {
      if (!L.V.eval) throw std::logic_error("nonlinearity '" + L.V.tag + "' has no evaluator bound");
      std::fill(v_out.begin(), v_out.end(), 0.0);
      L.V.eval(x, value, v_out);
      r += Eigen::Map<const Eigen::VectorXd>(v_out.data(), N);
    }
    if (!r.allFinite()) throw std::runtime_error("section evaluation produced a non-finite value");
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

NonUcpOperator build_nonucp_operator(std::function<double(std::span<const double>)> a) {
  NonUcpOperator op;
  op.euclidean = hodge_symbol(2);
  // Symbol with sigma(xi)^2 = -(xi1^2 + xi2^2 / 2): keep A1 and replace A2 by
  // (A2 + A1 A2) / 2, which anticommutes with A1 and squares to -Id/2.
  const auto& a1 = op.euclidean.A[0];
  const auto& a2 = op.euclidean.A[1];
  RationalMatrix half_a2 = (a2 + a1 * a2) * Rational(1, 2);
  op.anisotropic = SymbolMap({a1, half_a2});
  op.anisotropic_metric = RationalMatrix{{1, 0}, {0, 1}};
  op.anisotropic_metric(1, 1) = Rational(1, 2);

  constexpr std::size_t block = 4;
  constexpr std::size_t n = 2;
  SemilinearSpec& L = op.spec;
  L.n = n;
  L.N = 4 * block;
  L.A.assign(n, PolyMatrix(L.N, L.N, n));
  L.B = PolyMatrix(L.N, L.N, n);
  const SymbolMap* diag[4] = {&op.anisotropic, &op.anisotropic, &op.euclidean, &op.euclidean};
  for (std::size_t b = 0; b < 4; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0; r < block; ++r) {
        for (std::size_t c = 0; c < block; ++c) {
          L.A[j](b * block + r, b * block + c) = MultiPoly::constant(n, diag[b]->A[j](r, c));
        }
      }
    }
  }
  for (std::size_t b = 0; b + 1 < 4; ++b) {
    for (std::size_t r = 0; r < block; ++r) {
      L.B(b * block + r, (b + 1) * block + r) = MultiPoly::constant(n, -1);
    }
  }
  L.V.tag = "custom";
  L.V.respects_zero_section = true;
  L.V.eval = [a = std::move(a)](std::span<const double> x, std::span<const double> e,
                                std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    double coeff = a ? a(x) : 0.0;
    for (std::size_t r = 0; r < block; ++r) out[3 * block + r] = -coeff * e[r];
  };
  return op;
}

SpecParseError::SpecParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column),
      message_(what) {}

namespace {

struct SpecLine {
  std::size_t number;
  std::size_t value_column;  // 1-based column where the value starts
  std::string key;
  std::string value;
};

MultiPoly parse_entry(const nlohmann::json& v, std::size_t nvars, const SpecLine& line) {
  try {
    if (v.is_number_integer()) return MultiPoly::constant(nvars, Rational(static_cast<long>(v.get<long long>())));
    if (v.is_string()) return parse_poly(v.get<std::string>(), nvars);
  } catch (const std::exception& e) {
    throw SpecParseError(line.number, line.value_column, e.what());
  }
  throw SpecParseError(line.number, line.value_column,
                       "matrix entries must be integers or strings (floats are not exact)");
}

PolyMatrix parse_matrix(const SpecLine& line, std::size_t N, std::size_t nvars) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line.value);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t col = line.value_column + (e.byte > 0 ? e.byte - 1 : 0);
    throw SpecParseError(line.number, col, "invalid matrix literal");
  }
  if (!j.is_array() || j.size() != N) {
    throw SpecParseError(line.number, line.value_column,
                         "expected " + std::to_string(N) + " rows for " + line.key);
  }
  PolyMatrix m(N, N, nvars);
  for (std::size_t r = 0; r < N; ++r) {
    if (!j[r].is_array() || j[r].size() != N) {
      throw SpecParseError(line.number, line.value_column,
                           "row " + std::to_string(r + 1) + " of " + line.key + " must have " +
                               std::to_string(N) + " entries");
    }
    for (std::size_t c = 0; c < N; ++c) m(r, c) = parse_entry(j[r][c], nvars, line);
  }
  return m;
}

std::size_t parse_count(const SpecLine& line) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(line.value, &pos);
  } catch (const std::exception&) {
    throw SpecParseError(line.number, line.value_column, "expected a positive integer");
  }
  if (pos != line.value.size() || v == 0) {
    throw SpecParseError(line.number, line.value_column, "expected a positive integer");
  }
  return v;
}

}  // namespace

SemilinearSpec parse_operator_spec(std::string_view text) {
  std::vector<SpecLine> lines;
  std::size_t number = 0;
  bool saw_header = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string raw(text.substr(start, end - start));
    ++number;
    start = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t first = raw.find_first_not_of(" \t");
    if (first == std::string::npos || raw[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!saw_header) {
      std::string header = raw.substr(first);
      while (!header.empty() && std::isspace(static_cast<unsigned char>(header.back()))) header.pop_back();
      if (header != "zeroset-operator v1") {
        throw SpecParseError(number, first + 1, "expected header 'zeroset-operator v1'");
      }
      saw_header = true;
      if (end == text.size()) break;
      continue;
    }
    std::size_t colon = raw.find(':', first);
    if (colon == std::string::npos) throw SpecParseError(number, first + 1, "expected 'key: value'");
    std::string key = raw.substr(first, colon - first);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    std::size_t vstart = raw.find_first_not_of(" \t", colon + 1);
    std::string value = vstart == std::string::npos ? "" : raw.substr(vstart);
    while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
    lines.push_back(SpecLine{number, (vstart == std::string::npos ? colon + 1 : vstart) + 1, key,
                             value});
    if (end == text.size()) break;
  }
  if (!saw_header) throw SpecParseError(number == 0 ? 1 : number, 1, "missing header");

  auto find = [&](const std::string& key) -> const SpecLine* {
    const SpecLine* found = nullptr;
    for (const auto& l : lines) {
      if (l.key == key) {
        if (found) throw SpecParseError(l.number, 1, "duplicate key '" + key + "'");
        found = &l;
      }
    }
    return found;
  };
  for (const auto& l : lines) {
    bool known = l.key == "n" || l.key == "N" || l.key == "B" || l.key == "nonlinearity" ||
                 (l.key.size() > 1 && l.key[0] == 'A');
    if (!known) throw SpecParseError(l.number, 1, "unknown key '" + l.key + "'");
  }
  const SpecLine* n_line = find("n");
  const SpecLine* N_line = find("N");
  if (!n_line) throw SpecParseError(number, 1, "missing key 'n'");
  if (!N_line) throw SpecParseError(number, 1, "missing key 'N'");

  SemilinearSpec L;
  L.n = parse_count(*n_line);
  L.N = parse_count(*N_line);
  for (std::size_t j = 1; j <= L.n; ++j) {
    const SpecLine* a = find("A" + std::to_string(j));
    if (!a) throw SpecParseError(number, 1, "missing key 'A" + std::to_string(j) + "'");
    L.A.push_back(parse_matrix(*a, L.N, L.n));
  }
  for (const auto& l : lines) {
    if (l.key[0] == 'A') {
      std::size_t idx = 0;
      try {
        idx = std::stoul(l.key.substr(1));
      } catch (const std::exception&) {
        throw SpecParseError(l.number, 1, "unknown key '" + l.key + "'");
      }
      if (idx < 1 || idx > L.n) throw SpecParseError(l.number, 1, "matrix index out of range");
    }
  }
  if (const SpecLine* b = find("B")) {
    L.B = parse_matrix(*b, L.N, L.n);
  } else {
    L.B = PolyMatrix(L.N, L.N, L.n);
  }
  L.V = no_nonlinearity();
  if (const SpecLine* v = find("nonlinearity")) {
    std::istringstream is(v->value);
    std::string tag;
    is >> tag;
    std::string rest;
    std::getline(is, rest);
    std::size_t f = rest.find_first_not_of(" \t");
    rest = f == std::string::npos ? "" : rest.substr(f);
    if (tag == "none") {
      if (!rest.empty()) throw SpecParseError(v->number, v->value_column, "'none' takes no argument");
    } else if (tag == "cubic-dirac") {
      try {
        L.V = cubic_dirac(parse_rational(rest));
      } catch (const std::invalid_argument& e) {
        throw SpecParseError(v->number, v->value_column, e.what());
      }
    } else if (tag == "custom") {
      if (rest.empty()) throw SpecParseError(v->number, v->value_column, "custom needs a name");
      L.V = Nonlinearity{};
      L.V.tag = "custom";
      L.V.respects_zero_section = true;
      L.V.eval = nullptr;
    } else {
      throw SpecParseError(v->number, v->value_column, "unknown nonlinearity '" + tag + "'");
    }
  }
  return L;
}

std::string format_operator_spec(const SemilinearSpec& L) {
  auto matrix = [&](const PolyMatrix& m) {
    std::string s = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r) s += ", ";
      s += "[";
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (c) s += ", ";
        const MultiPoly& p = m(r, c);
        if (p.is_constant() && p.coefficient(Exponent(L.n, 0)).get_den() == 1) {
          s += p.coefficient(Exponent(L.n, 0)).get_num().get_str();
        } else {
          s += "\"" + to_string(p) + "\"";
        }
      }
      s += "]";
    }
    return s + "]";
  };
  std::ostringstream os;
  os << "zeroset-operator v1\n";
  os << "n: " << L.n << "\n";
  os << "N: " << L.N << "\n";
  for (std::size_t j = 0; j < L.A.size(); ++j) os << "A" << j + 1 << ": " << matrix(L.A[j]) << "\n";
  if (!L.B.is_zero()) os << "B: " << matrix(L.B) << "\n";
  if (L.V.tag == "cubic-dirac") {
    os << "nonlinearity: cubic-dirac " << format_rational(L.V.parameter) << "\n";
  } else if (L.V.tag == "custom") {
    os << "nonlinearity: custom user\n";
  }
  return os.str();
}

}  // namespace zeroset
