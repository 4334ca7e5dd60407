#include "nlkg/snapshot.hpp"

#include <cstring>
#include <fstream>

#include "nlkg/errors.hpp"

namespace nlkg {

namespace {

constexpr char kMagic[5] = {'N', 'L', 'K', 'G', '1'};

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& buf, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, 8);
  put_u64(buf, bits);
}

class Reader {
 public:
  Reader(const std::string& data, const std::string& path)
      : data_(data), path_(path) {}
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= std::uint64_t(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= std::uint32_t(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double x;
    std::memcpy(&x, &bits, 8);
    return x;
  }
  unsigned char byte() {
    need(1);
    return static_cast<unsigned char>(data_[pos_++]);
  }
  void need(std::size_t k) const {
    if (pos_ + k > data_.size())
      throw IoError("truncated snapshot file: " + path_);
  }
  std::size_t pos() const { return pos_; }

 private:
  const std::string& data_;
  const std::string& path_;
  std::size_t pos_ = 0;
};

std::uint64_t value_count(const Snapshot& s) {
  if (s.kind == Snapshot::Kind::Radial) return s.n;
  std::uint64_t c = 1;
  for (int i = 0; i < s.d; ++i) c *= s.n;
  return c;
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& s) {
  if (s.values.size() != value_count(s))
    throw IoError("snapshot value count does not match its header");
  std::string buf;
  buf.reserve(26 + 8 * s.values.size());
  buf.append(kMagic, 5);
  buf.push_back(char(s.kind));
  put_u32(buf, std::uint32_t(s.d));
  put_u64(buf, s.n);
  put_f64(buf, s.extent);
  for (double v : s.values) put_f64(buf, v);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) throw IoError("write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  Reader rr(data, path);
  rr.need(5);
  if (std::memcmp(data.data(), kMagic, 5) != 0)
    throw IoError("bad magic, not a NLKG1 snapshot: " + path);
  for (int i = 0; i < 5; ++i) rr.byte();
  Snapshot s;
  const unsigned kind = rr.byte();
  if (kind > 1) throw IoError("unknown grid kind in snapshot: " + path);
  s.kind = Snapshot::Kind(kind);
  s.d = int(rr.u32());
  s.n = rr.u64();
  s.extent = rr.f64();
  const std::uint64_t count = value_count(s);
  s.values.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) s.values[i] = rr.f64();
  return s;
}

Snapshot make_radial_snapshot(const RadialGrid& g,
                              const std::vector<double>& values) {
  if (values.size() != g.size()) throw GridMismatch("snapshot size mismatch");
  Snapshot s;
  s.kind = Snapshot::Kind::Radial;
  s.d = g.dim();
  s.n = g.size();
  s.extent = g.r_max();
  s.values = values;
  return s;
}

Snapshot make_box_snapshot(const BoxGrid& g, const std::vector<double>& values) {
  if (values.size() != g.total()) throw GridMismatch("snapshot size mismatch");
  Snapshot s;
  s.kind = Snapshot::Kind::Box;
  s.d = g.dim();
  s.n = g.points_per_side();
  s.extent = g.length();
  s.values = values;
  return s;
}

RadialGrid radial_grid_of(const Snapshot& s) {
  if (s.kind != Snapshot::Kind::Radial)
    throw IoError("snapshot does not hold a radial field");
  return RadialGrid(s.d, s.extent, s.n);
}

BoxGrid box_grid_of(const Snapshot& s) {
  if (s.kind != Snapshot::Kind::Box)
    throw IoError("snapshot does not hold a box field");
  return BoxGrid(s.d, s.extent, s.n);
}

}  // namespace nlkg
