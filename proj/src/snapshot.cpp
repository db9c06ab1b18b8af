#include "eulerperm/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "eulerperm/error.hpp"

namespace eulerperm {

namespace {

constexpr const char* kMagic = "eulerperm-field 1";

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const ScalarField& f, const SnapshotHeader& header) {
  if (header.n != f.grid().n() || header.box_length != f.grid().length())
    throw InvalidInput("snapshot header does not match the field grid");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot open snapshot for writing: " + path.string());
  out << kMagic << '\n'
      << "n " << header.n << '\n'
      << "L " << format_double(header.box_length) << '\n'
      << "kind " << header.kind << '\n'
      << "component " << header.component << '\n'
      << "symmetry " << describe(header.symmetry) << '\n'
      << "time " << format_double(header.time) << '\n'
      << "byte_order little\n"
      << "dtype float64\n"
      << "layout x1-fastest\n"
      << "end_header\n";
  std::vector<std::uint64_t> raw(f.grid().size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = to_little(std::bit_cast<std::uint64_t>(f[i]));
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
  if (!out) throw InvalidInput("failed writing snapshot: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open snapshot: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw InvalidInput("not a field snapshot: " + path.string());
  std::map<std::string, std::string> kv;
  bool closed = false;
  while (std::getline(in, line)) {
    if (line == "end_header") {
      closed = true;
      break;
    }
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw InvalidInput("malformed header line: " + line);
    kv[line.substr(0, sp)] = line.substr(sp + 1);
  }
  if (!closed) throw InvalidInput("snapshot header not terminated");
  auto need = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw InvalidInput(std::string("snapshot header missing key: ") + key);
    return it->second;
  };
  if (need("byte_order") != "little" || need("dtype") != "float64" || need("layout") != "x1-fastest")
    throw InvalidInput("unsupported snapshot encoding");
  SnapshotHeader h;
  try {
    h.n = std::stoi(need("n"));
    h.box_length = std::stod(need("L"));
    h.component = std::stoi(need("component"));
    h.time = std::stod(need("time"));
  } catch (const std::logic_error&) {
    throw InvalidInput("snapshot header has non-numeric fields");
  }
  h.kind = need("kind");
  h.symmetry = parse_symmetry_flags(need("symmetry"));
  const Grid g(h.n, h.box_length);
  std::vector<std::uint64_t> raw(g.size());
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
  if (in.gcount() != static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)))
    throw InvalidInput("snapshot payload truncated");
  std::vector<double> samples(g.size());
  for (std::size_t i = 0; i < raw.size(); ++i) samples[i] = std::bit_cast<double>(to_little(raw[i]));
  ScalarField f(g, std::move(samples));
  f.set_flags(h.symmetry);
  return Snapshot{h, std::move(f)};
}

}  // namespace eulerperm
