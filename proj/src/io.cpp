#include "vecsub/io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace vecsub {

namespace {

template <class T>
std::string scalar_str(const T& v);

template <>
std::string scalar_str<Rat>(const Rat& v) {
  return rat_to_string(v);
}
template <>
std::string scalar_str<CD>(const CD& v) {
  return format_complex(v);
}

template <class T>
void write_filter_impl(std::ostream& os, const MatrixFilter<T>& f, const char* kind) {
  MatrixFilter<T> g = f;
  g.trim();
  os << "format vecsub-filter 1\n";
  os << "d " << g.d << "\n";
  os << "rows " << g.rows << "\n";
  os << "cols " << g.cols << "\n";
  os << "scalar " << kind << "\n";
  os << "support";
  if (g.box.empty)
    for (int i = 0; i < g.d; ++i) os << " 0 -1";
  else
    for (int i = 0; i < g.d; ++i) os << " " << g.box.lo[i] << " " << g.box.hi[i];
  os << "\n";
  for (std::int64_t p = 0; p < g.npoints(); ++p) {
    Ix k = g.box.unflat(p);
    const T* v = g.at_flat(p);
    bool nz = false;
    for (size_t i = 0; i < g.block(); ++i)
      if (!scalar_traits<T>::is_zero(v[i])) nz = true;
    if (!nz) continue;
    os << "entry";
    for (int i = 0; i < g.d; ++i) os << " " << k[i];
    os << "\n";
    for (int i = 0; i < g.rows; ++i) {
      for (int j = 0; j < g.cols; ++j)
        os << (j ? " " : "") << scalar_str<T>(v[size_t(i) * size_t(g.cols) + size_t(j)]);
      os << "\n";
    }
  }
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
  throw parse_error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_complex(const CD& z) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << z.real();
  if (z.imag() != 0.0) {
    if (z.imag() >= 0) os << "+";
    os << z.imag() << "i";
  }
  return os.str();
}

Rat parse_rational(const std::string& tok) {
  if (tok.empty()) throw parse_error("empty rational token");
  try {
    Rat r(tok);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw parse_error("bad rational token '" + tok + "'");
  }
}

CD parse_complex(const std::string& tok) {
  if (tok.empty()) throw parse_error("empty complex token");
  std::string s = tok;
  if (s.back() == 'i') {
    s.pop_back();
    // split at the last +/- that is not an exponent sign and not leading
    int split = -1;
    for (int i = int(s.size()) - 1; i > 0; --i) {
      char c = s[size_t(i)];
      if ((c == '+' || c == '-') && s[size_t(i - 1)] != 'e' && s[size_t(i - 1)] != 'E') {
        split = i;
        break;
      }
    }
    if (split < 0) {  // pure imaginary "1.5i" or "i"
      std::string im = s.empty() ? "1" : s;
      if (im == "+" || im == "-") im += "1";
      return CD(0.0, std::stod(im));
    }
    std::string re = s.substr(0, size_t(split));
    std::string im = s.substr(size_t(split));
    if (im == "+" || im == "-") im += "1";
    return CD(std::stod(re), std::stod(im));
  }
  return CD(std::stod(s), 0.0);
}

void write_filter(std::ostream& os, const MatrixFilter<Rat>& f) {
  write_filter_impl(os, f, "rational");
}
void write_filter(std::ostream& os, const MatrixFilter<CD>& f) {
  write_filter_impl(os, f, "complex");
}

void write_filter_file(const std::string& path, const MatrixFilter<Rat>& f) {
  std::ofstream os(path);
  if (!os) throw parse_error("cannot open " + path + " for writing");
  write_filter(os, f);
}
void write_filter_file(const std::string& path, const MatrixFilter<CD>& f) {
  std::ofstream os(path);
  if (!os) throw parse_error("cannot open " + path + " for writing");
  write_filter(os, f);
}

AnyFilter read_filter(std::istream& is, const std::string& name) {
  int lineno = 0;
  auto next_line = [&](std::string& line) {
    while (std::getline(is, line)) {
      ++lineno;
      size_t h = line.find('#');
      if (h != std::string::npos) line.erase(h);
      bool blank = true;
      for (char c : line)
        if (!isspace(static_cast<unsigned char>(c))) blank = false;
      if (!blank) return true;
    }
    return false;
  };
  std::string line;
  if (!next_line(line)) fail(name, lineno, "empty file");
  {
    std::istringstream ls(line);
    std::string w1, w2;
    int ver = 0;
    ls >> w1 >> w2 >> ver;
    if (w1 != "format" || w2 != "vecsub-filter" || ver != 1)
      fail(name, lineno, "expected 'format vecsub-filter 1'");
  }
  int d = 0, rows = 0, cols = 0;
  std::string kind;
  Box box;
  bool have_support = false;
  auto read_header = [&](const std::string& l) {
    std::istringstream ls(l);
    std::string key;
    ls >> key;
    if (key == "d") ls >> d;
    else if (key == "rows") ls >> rows;
    else if (key == "cols") ls >> cols;
    else if (key == "scalar") ls >> kind;
    else if (key == "support") {
      if (d < 1) fail(name, lineno, "support before d");
      Ix lo(d), hi(d);
      for (int i = 0; i < d; ++i) {
        if (!(ls >> lo[i] >> hi[i])) fail(name, lineno, "bad support line");
      }
      box = Box(lo, hi);
      have_support = true;
    } else
      fail(name, lineno, "unknown header key '" + key + "'");
    if (ls.fail()) fail(name, lineno, "malformed header line");
    return key == "support";
  };
  while (next_line(line)) {
    if (read_header(line)) break;
  }
  if (d < 1 || d > kMaxDim) fail(name, lineno, "bad dimension");
  if (rows < 1 || cols < 1) fail(name, lineno, "bad shape");
  if (kind != "rational" && kind != "complex") fail(name, lineno, "bad scalar kind");
  if (!have_support) fail(name, lineno, "missing support");

  auto read_entries = [&](auto& f) {
    using T = std::decay_t<decltype(f.data[0])>;
    while (next_line(line)) {
      std::istringstream ls(line);
      std::string key;
      ls >> key;
      if (key != "entry") fail(name, lineno, "expected 'entry'");
      Ix k(d);
      for (int i = 0; i < d; ++i)
        if (!(ls >> k[i])) fail(name, lineno, "bad entry point");
      Mat<T> m(rows, cols);
      for (int i = 0; i < rows; ++i) {
        if (!next_line(line)) fail(name, lineno, "unexpected EOF in entry block");
        std::istringstream vs(line);
        for (int j = 0; j < cols; ++j) {
          std::string tok;
          if (!(vs >> tok)) fail(name, lineno, "missing value");
          try {
            if constexpr (std::is_same_v<T, Rat>) m.at(i, j) = parse_rational(tok);
            else m.at(i, j) = parse_complex(tok);
          } catch (const parse_error& e) {
            fail(name, lineno, e.what());
          } catch (const std::exception&) {
            fail(name, lineno, "bad value token '" + tok + "'");
          }
        }
      }
      f.set(k, m);
    }
    f.trim();
  };
  if (kind == "rational") {
    MatrixFilter<Rat> f(d, rows, cols);
    if (!box.empty) f.ensure(box);
    read_entries(f);
    return f;
  }
  MatrixFilter<CD> f(d, rows, cols);
  if (!box.empty) f.ensure(box);
  read_entries(f);
  return f;
}

AnyFilter read_filter_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw parse_error("cannot open " + path);
  return read_filter(is, path);
}

MatrixFilter<Rat> read_rational_filter_file(const std::string& path) {
  AnyFilter f = read_filter_file(path);
  if (auto* r = std::get_if<MatrixFilter<Rat>>(&f)) return *r;
  throw parse_error(path + ": rational filter required");
}

void write_grid_csv(std::ostream& os, const Grid<CD>& g, const std::string& beta,
                    const std::string& interpretation) {
  os << "# vecsub grid\n";
  os << "# level " << g.level << "\n";
  os << "# m " << g.m << "\n";
  os << "# r " << g.r << "\n";
  os << "# box";
  for (int i = 0; i < g.d; ++i) os << " " << g.box.lo[i] << " " << g.box.hi[i];
  os << "\n";
  if (!beta.empty()) os << "# beta " << beta << "\n";
  if (!interpretation.empty()) os << "# interpretation " << interpretation << "\n";
  for (int i = 0; i < g.d; ++i) os << "k" << (i + 1) << ",";
  for (int i = 0; i < g.d; ++i) os << "x" << (i + 1) << ",";
  for (int c = 0; c < g.r; ++c) os << "v" << (c + 1) << (c + 1 < g.r ? "," : "");
  os << "\n";
  os << std::setprecision(17);
  for (std::int64_t f = 0; f < g.box.volume(); ++f) {
    Ix k = g.box.unflat(f);
    auto x = g.coords(k);
    for (int i = 0; i < g.d; ++i) os << k[i] << ",";
    for (int i = 0; i < g.d; ++i) os << x[size_t(i)] << ",";
    const CD* v = g.at(f);
    for (int c = 0; c < g.r; ++c) {
      os << v[c].real();
      if (v[c].imag() != 0.0) os << (v[c].imag() > 0 ? "+" : "") << v[c].imag() << "i";
      if (c + 1 < g.r) os << ",";
    }
    os << "\n";
  }
}

void write_grid_csv_file(const std::string& path, const Grid<CD>& g, const std::string& beta,
                         const std::string& interpretation) {
  std::ofstream os(path);
  if (!os) throw parse_error("cannot open " + path + " for writing");
  write_grid_csv(os, g, beta, interpretation);
}

void write_grid_binary_file(const std::string& path, const Grid<CD>& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw parse_error("cannot open " + path + " for writing");
  os << "VSGRID1\n";
  auto w64 = [&](std::int64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); };
  w64(g.level);
  w64(g.m);
  w64(g.d);
  w64(g.r);
  for (int i = 0; i < g.d; ++i) {
    w64(g.box.lo[i]);
    w64(g.box.hi[i]);
  }
  for (std::int64_t f = 0; f < g.box.volume(); ++f) {
    const CD* v = g.at(f);
    for (int c = 0; c < g.r; ++c) {
      double re = v[c].real();
      os.write(reinterpret_cast<const char*>(&re), 8);
    }
  }
}

Ix parse_multiindex(const std::string& text, int d) {
  std::string s;
  for (char c : text)
    if (c != '(' && c != ')' && !isspace(static_cast<unsigned char>(c))) s += c;
  Ix k(d);
  std::istringstream is(s);
  std::string tok;
  int i = 0;
  while (std::getline(is, tok, ',')) {
    if (i >= d) throw parse_error("multi-index '" + text + "' has too many entries");
    try {
      k[i++] = std::stoll(tok);
    } catch (const std::exception&) {
      throw parse_error("bad multi-index entry '" + tok + "'");
    }
  }
  if (i != d) throw parse_error("multi-index '" + text + "' needs " + std::to_string(d) +
                                " entries");
  return k;
}

std::vector<Ix> parse_multiindex_list(const std::string& text, int d) {
  std::vector<Ix> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ';'))
    if (!tok.empty()) out.push_back(parse_multiindex(tok, d));
  return out;
}

}  // namespace vecsub
