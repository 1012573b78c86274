#include "ttst/serialize.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ttst {

namespace {

void put_i32(std::ostream& os, std::int32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }

std::int32_t get_i32(std::istream& is) {
  std::int32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  if (!is) throw std::runtime_error("tt_load: truncated stream");
  return v;
}

void put_doubles(std::ostream& os, const std::vector<double>& v) {
  os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void get_doubles(std::istream& is, std::vector<double>& v) {
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!is) throw std::runtime_error("tt_load: truncated stream");
}

void check_magic(std::istream& is, const char* magic) {
  char buf[4];
  is.read(buf, 4);
  if (!is || std::string(buf, 4) != magic) throw std::runtime_error("tt_load: bad magic");
}

}  // namespace

void tt_save(std::ostream& os, const TtVector& x) {
  x.check_valid();
  os.write("TTV1", 4);
  put_i32(os, static_cast<std::int32_t>(x.cores.size()));
  for (const auto& c : x.cores) {
    put_i32(os, c.r0);
    put_i32(os, c.n);
    put_i32(os, c.r1);
    put_doubles(os, c.v);
  }
}

void tt_save(std::ostream& os, const TtOperator& a) {
  a.check_valid();
  os.write("TTO1", 4);
  put_i32(os, static_cast<std::int32_t>(a.cores.size()));
  for (const auto& c : a.cores) {
    put_i32(os, c.r0);
    put_i32(os, c.n);
    put_i32(os, c.m);
    put_i32(os, c.r1);
    put_doubles(os, c.v);
  }
}

TtVector tt_load_vector(std::istream& is) {
  check_magic(is, "TTV1");
  const std::int32_t d = get_i32(is);
  if (d < 1 || d > 4096) throw std::runtime_error("tt_load: implausible core count");
  TtVector x;
  for (std::int32_t k = 0; k < d; ++k) {
    const std::int32_t r0 = get_i32(is), n = get_i32(is), r1 = get_i32(is);
    if (r0 < 1 || n < 1 || r1 < 1) throw std::runtime_error("tt_load: bad core shape");
    TtCore3 c(r0, n, r1);
    get_doubles(is, c.v);
    x.cores.push_back(std::move(c));
  }
  x.check_valid();
  return x;
}

TtOperator tt_load_operator(std::istream& is) {
  check_magic(is, "TTO1");
  const std::int32_t d = get_i32(is);
  if (d < 1 || d > 4096) throw std::runtime_error("tt_load: implausible core count");
  TtOperator a;
  for (std::int32_t k = 0; k < d; ++k) {
    const std::int32_t r0 = get_i32(is), n = get_i32(is), m = get_i32(is), r1 = get_i32(is);
    if (r0 < 1 || n < 1 || m < 1 || r1 < 1) throw std::runtime_error("tt_load: bad core shape");
    TtCore4 c(r0, n, m, r1);
    get_doubles(is, c.v);
    a.cores.push_back(std::move(c));
  }
  a.check_valid();
  return a;
}

void tt_save_file(const std::string& path, const TtVector& x) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("tt_save_file: cannot open " + path);
  tt_save(os, x);
}

TtVector tt_load_vector_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("tt_load_vector_file: cannot open " + path);
  return tt_load_vector(is);
}

}  // namespace ttst
