#include <stdlib.h>

#include <string>
#include <system_error>

#include "reprolint/guard.hpp"
#include "reprolint/project.hpp"

namespace reprolint {

fs::path sandbox(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw ScanError("not a project directory: " + root.string());
  const fs::path source = fs::weakly_canonical(fs::absolute(root));

  std::string tmpl = (fs::temp_directory_path() / "reprolint-XXXXXX").string();
  if (!::mkdtemp(tmpl.data())) throw std::runtime_error("cannot create temporary directory");
  const fs::path base(tmpl);
  const fs::path dest = base / source.filename();

  try {
    fs::create_directory(dest);
    auto it = fs::recursive_directory_iterator(source);
    for (auto end = fs::recursive_directory_iterator(); it != end; ++it) {
      const auto& entry = *it;
      const auto rel = entry.path().lexically_relative(source);
      if (it.depth() == 0 && entry.path().filename() == kStateDir) {
        it.disable_recursion_pending();
        continue;
      }
      const auto target = dest / rel;
      if (entry.is_symlink()) {
        fs::copy_symlink(entry.path(), target);
      } else if (entry.is_directory()) {
        fs::create_directory(target);
      } else if (entry.is_regular_file()) {
        fs::copy_file(entry.path(), target);
      }
    }
  } catch (const std::exception& e) {
    fs::remove_all(base, ec);
    throw std::runtime_error(std::string("sandbox copy failed: ") + e.what());
  }
  return dest;
}

}  // namespace reprolint
