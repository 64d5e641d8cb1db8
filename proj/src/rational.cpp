#include "ttlab/rational.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ttlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) throw std::invalid_argument("empty number");
  s = s.substr(start);

  bool negative = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }

  Rational result;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("bad rational '" + s + "'");
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    result = Rational(mpz_class(num, 10), d);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string::npos) {
      std::string ex = body.substr(e + 1);
      body = body.substr(0, e);
      size_t sign = (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) ? 1 : 0;
      if (!all_digits(ex.substr(sign)) || ex.size() - sign > 6) throw std::invalid_argument("bad exponent '" + s + "'");
      exponent = std::stol(ex);
    }
    std::string ip = body, fp;
    if (auto dot = body.find('.'); dot != std::string::npos) {
      ip = body.substr(0, dot);
      fp = body.substr(dot + 1);
      if (ip.empty()) ip = "0";
      if (fp.empty() && dot == 0) throw std::invalid_argument("bad decimal '" + s + "'");
    }
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp))) throw std::invalid_argument("bad number '" + s + "'");
    mpz_class ten_power;
    mpz_ui_pow_ui(ten_power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent - static_cast<long>(fp.size()))));
    result = Rational(mpz_class(ip + fp, 10));
    if (exponent - static_cast<long>(fp.size()) >= 0)
      result *= ten_power;
    else
      result /= ten_power;
    result.canonicalize();
  }
  return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
  return buf;
}

Rational floor_div(const Rational& a, const Rational& b) {
  Rational q = a / b;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

Rational wrap(const Rational& x, const Rational& m) {
  Rational r = x - floor_div(x, m) * m;
  r.canonicalize();
  return r;
}

double wrap(double x, double m) {
  double r = std::fmod(x, m);
  if (r < 0) r += m;
  if (r >= m) r = 0.0;
  return r;
}

}  // namespace ttlab
