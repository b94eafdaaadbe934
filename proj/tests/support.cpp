#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace horco::test {

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace horco::test
