#include "tcsl/fldm.hpp"

#include <cstring>
#include <vector>

#include "bytes.hpp"

namespace tcsl {

namespace {

constexpr char kMagic[4] = {'F', 'L', 'D', 'M'};
constexpr std::uint16_t kVersion = 1;

std::vector<std::uint8_t> header(FldmDtype dtype, std::uint32_t rows, std::uint32_t cols) {
  std::vector<std::uint8_t> b;
  b.insert(b.end(), kMagic, kMagic + 4);
  detail::put_u16(b, kVersion);
  detail::put_u16(b, static_cast<std::uint16_t>(dtype));
  detail::put_u32(b, rows);
  detail::put_u32(b, cols);
  return b;
}

template <class Matrix>
void save(const std::string& path, const Matrix& m, FldmDtype dtype, std::size_t elem_size) {
  if (m.rows() <= 0 || m.cols() <= 0) raise(Errc::invalid_argument, "cannot save an empty matrix");
  std::vector<std::uint8_t> bytes =
      header(dtype, static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols()));
  const std::size_t payload = static_cast<std::size_t>(m.size()) * elem_size;
  const std::size_t head = bytes.size();
  bytes.resize(head + payload);
  std::memcpy(bytes.data() + head, m.data(), payload);
  detail::write_file(path, bytes.data(), bytes.size());
}

}  // namespace

void save_fldm(const std::string& path, const HalfMatrix& m) {
  save(path, m, FldmDtype::f16, sizeof(HalfBits));
}

void save_fldm(const std::string& path, const FloatMatrix& m) {
  save(path, m, FldmDtype::f32, sizeof(float));
}

FldmFile load_fldm(const std::string& path) {
  const std::vector<std::uint8_t> bytes = detail::read_file(path);
  detail::Reader r{bytes.data(), bytes.size()};
  r.expect_magic(kMagic, "FLDM");
  if (r.u16() != kVersion) raise(Errc::bad_version, "unknown FLDM version");
  const std::uint16_t dtype = r.u16();
  if (dtype > 1) raise(Errc::bad_dtype, "unknown FLDM dtype");
  const std::uint32_t rows = r.u32();
  const std::uint32_t cols = r.u32();
  if (rows == 0 || cols == 0) raise(Errc::bad_header, "zero-sized matrix");
  if (static_cast<std::uint64_t>(rows) * cols > (std::uint64_t{1} << 33))
    raise(Errc::bad_header, "implausible matrix size");

  FldmFile f;
  f.dtype = static_cast<FldmDtype>(dtype);
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  if (f.dtype == FldmDtype::f16) {
    f.f16.resize(rows, cols);
    r.raw(f.f16.data(), n * sizeof(HalfBits));
  } else {
    f.f32.resize(rows, cols);
    r.raw(f.f32.data(), n * sizeof(float));
  }
  r.done();
  return f;
}

HalfMatrix load_fldm_f16(const std::string& path) {
  FldmFile f = load_fldm(path);
  if (f.dtype != FldmDtype::f16) raise(Errc::bad_dtype, path + " holds f32 data, need f16");
  return std::move(f.f16);
}

}  // namespace tcsl
