#include "kgforge/condensed_matrix.hpp"

#include <array>
#include <bit>
#include <fstream>

#include "kgforge/fs.hpp"

namespace kgforge {

static_assert(std::endian::native == std::endian::little, "matrix files are written in host byte order");

namespace {

constexpr std::array<char, 8> kMagic{'K', 'G', 'F', 'C', 'M', 'A', 'T', '1'};

}  // namespace

std::uint64_t pair_count(std::uint64_t n) {
  if (n < 2) return 0;
  const unsigned __int128 total = static_cast<unsigned __int128>(n) * (n - 1) / 2;
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    throw CapacityError(0, "pair count for " + std::to_string(n) + " items overflows 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

void write_matrix(const CondensedMatrix<double>& m, const std::filesystem::path& path) {
  fs::write_atomically(path, [&](std::ostream& out) {
    out.write(kMagic.data(), kMagic.size());
    const std::uint64_t header[3] = {m.items(), m.block_entries(), sizeof(double)};
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    for (std::size_t b = 0; b < m.block_count(); ++b) {
      const auto& block = m.block(b);
      out.write(reinterpret_cast<const char*>(block.data()),
                static_cast<std::streamsize>(block.size() * static_cast<Eigen::Index>(sizeof(double))));
    }
  });
}

CondensedMatrix<double> read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::array<char, 8> magic{};
  std::uint64_t header[3] = {};
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(header), sizeof header);
  if (!in || magic != kMagic) throw Error(path.string() + ": not a distance matrix file");
  if (header[2] != sizeof(double)) throw Error(path.string() + ": unsupported scalar width");
  CondensedMatrix<double> m(header[0], header[1]);
  for (std::size_t b = 0; b < m.block_count(); ++b) {
    auto& block = m.block(b);
    in.read(reinterpret_cast<char*>(block.data()),
            static_cast<std::streamsize>(block.size() * static_cast<Eigen::Index>(sizeof(double))));
  }
  if (!in) throw Error(path.string() + ": truncated distance matrix");
  return m;
}

}  // namespace kgforge
