#include "magicbc/statespec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <vector>

#include "magicbc/error.hpp"

namespace magicbc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_real(const std::string& tok, const std::string& spec) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (tok.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(ErrorKind::InvalidSpec, "bad number '" + tok + "' in state spec '" + spec + "'");
  return v;
}

PureState named_state(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  static const std::map<std::string, std::pair<Complex, Complex>> table = {
      {"zero", {1.0, 0.0}},           {"0", {1.0, 0.0}},
      {"one", {0.0, 1.0}},            {"1", {0.0, 1.0}},
      {"plus", {r, r}},               {"+", {r, r}},
      {"minus", {r, -r}},             {"-", {r, -r}},
      {"plus_i", {r, Complex(0, r)}}, {"+i", {r, Complex(0, r)}},
      {"minus_i", {r, Complex(0, -r)}}, {"-i", {r, Complex(0, -r)}},
  };
  if (name == "T") return t_state();
  if (name == "Tperp") return t_perp_state();
  if (name == "H") return h_state();
  auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorKind::InvalidSpec, "unknown state name '" + name + "'");
  Vec v(2);
  v << it->second.first, it->second.second;
  return PureState(v);
}

PureState amplitude_state(const std::string& body, const std::string& spec) {
  const auto parts = split(body, ';');
  const auto dim = static_cast<int>(parts.size());
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw Error(ErrorKind::InvalidSpec, "amplitude count must be a power of two >= 2 in '" + spec + "'");
  Vec v(dim);
  for (int k = 0; k < dim; ++k) {
    const auto reim = split(parts[k], ',');
    if (reim.size() != 2) throw Error(ErrorKind::InvalidSpec, "amplitude '" + parts[k] + "' is not re,im");
    v(k) = Complex(parse_real(reim[0], spec), parse_real(reim[1], spec));
  }
  if (v.norm() < 1e-300) throw Error(ErrorKind::InvalidSpec, "zero amplitude vector in '" + spec + "'");
  return PureState::normalized(v);
}

}  // namespace

PureState parse_state_spec(const std::string& raw) {
  const std::string spec = trim(raw);
  if (spec.empty()) throw Error(ErrorKind::InvalidSpec, "empty state spec");
  if (spec.rfind("amp:", 0) == 0) return amplitude_state(spec.substr(4), spec);
  if (spec.find(',') == std::string::npos) return named_state(spec);

  const auto parts = split(spec, ',');
  if (parts.size() < 2 || parts.size() > 3)
    throw Error(ErrorKind::InvalidSpec, "expected theta,zeta[,basis=...] in '" + spec + "'");
  const double theta = parse_real(parts[0], spec);
  const double zeta = parse_real(parts[1], spec);
  std::string basis = "T";
  if (parts.size() == 3) {
    if (parts[2].rfind("basis=", 0) != 0) throw Error(ErrorKind::InvalidSpec, "expected basis=... in '" + spec + "'");
    basis = parts[2].substr(6);
  }
  if (basis == "T") return superpose(t_state(), t_perp_state(), theta, zeta);
  if (basis == "computational") return superpose(PureState::basis(2, 0), PureState::basis(2, 1), theta, zeta);
  throw Error(ErrorKind::InvalidSpec, "unknown basis '" + basis + "'");
}

}  // namespace magicbc
