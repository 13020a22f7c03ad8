#include "tcsl/errors.hpp"

namespace tcsl {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::bad_magic: return "bad magic";
    case Errc::bad_version: return "unsupported version";
    case Errc::bad_header: return "bad header";
    case Errc::bad_dtype: return "wrong dtype";
    case Errc::truncated: return "truncated file";
    case Errc::trailing_data: return "trailing data";
    case Errc::inconsistent_offsets: return "inconsistent offsets";
    case Errc::location_out_of_range: return "location out of range";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::io_failure: return "i/o failure";
  }
  return "error";
}

}  // namespace tcsl
