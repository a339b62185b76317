#include "gcpoly/cli/pgm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace gcpoly::cli {

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

std::size_t header_number(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument(std::string("PGM: bad ") + what);
  }
  return std::stoul(tok);
}

}  // namespace

RasterMask read_pgm(std::istream& in) {
  const std::string magic = header_token(in);
  if (magic != "P5" && magic != "P2") {
    throw std::invalid_argument("PGM: expected P5 or P2 magic");
  }
  const std::size_t width = header_number(in, "width");
  const std::size_t height = header_number(in, "height");
  const std::size_t maxval = header_number(in, "maxval");
  if (width == 0 || height == 0 || maxval == 0 || maxval > 65535) {
    throw std::invalid_argument("PGM: bad dimensions or maxval");
  }
  std::vector<std::uint8_t> values(width * height);
  if (magic == "P5") {
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    std::vector<char> raw(values.size() * bytes);
    if (!in.read(raw.data(), static_cast<std::streamsize>(raw.size()))) {
      throw std::invalid_argument("PGM: truncated pixel data");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      unsigned v = static_cast<unsigned char>(raw[i * bytes]);
      if (bytes == 2) v = (v << 8) | static_cast<unsigned char>(raw[i * bytes + 1]);
      values[i] = v > 0 ? 1 : 0;
    }
  } else {
    for (auto& v : values) {
      const std::string tok = header_token(in);
      if (tok.empty()) throw std::invalid_argument("PGM: truncated pixel data");
      v = std::stoul(tok) > 0 ? 1 : 0;
    }
  }
  return {width, height, std::move(values)};
}

RasterMask read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const RasterMask& mask) {
  out << "P5\n" << mask.width() << ' ' << mask.height() << "\n255\n";
  for (auto v : mask.values()) out.put(v ? static_cast<char>(255) : '\0');
}

void write_pgm_file(const std::string& path, const RasterMask& mask) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  write_pgm(out, mask);
}

}  // namespace gcpoly::cli
