#pragma once

#include "crnt/io.hpp"
#include "crnt/translation.hpp"

#include <string>

namespace crnt::testing {

inline std::string data_path(const std::string& name) { return std::string(CRNT_DATA_DIR) + "/" + name; }

/// Classical network translated by its scheme file.
inline Translation translated(const std::string& stem) {
  const auto parsed = read_network_file(data_path(stem + ".mas"));
  const auto scheme = resolve_scheme(read_scheme_file(data_path(stem + ".scheme")), parsed);
  return translate(parsed.network, scheme);
}

inline Gcrn gcrn_fixture(const std::string& stem) { return read_network_file(data_path(stem + ".gcrn")).network; }

inline SymbolId symbol(const Gcrn& net, const std::string& name) { return net.symbols().find(name).value(); }

}  // namespace crnt::testing

namespace crnt::testing {

inline RationalMatrix int_matrix(std::initializer_list<std::initializer_list<int>> rows) {
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace crnt::testing
