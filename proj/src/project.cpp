#include "reprolint/project.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <system_error>

namespace reprolint {

namespace {

struct ExtensionEntry {
  std::string_view ext;
  std::string_view mime;
  FileCategory category;
};

using C = FileCategory;

// Fixed table so reports are identical on every platform.
constexpr std::array kExtensionTable{
    ExtensionEntry{"csv", "text/csv", C::RawData},
    ExtensionEntry{"tsv", "text/tab-separated-values", C::RawData},
    ExtensionEntry{"xls", "application/vnd.ms-excel", C::RawData},
    ExtensionEntry{"xlsx", "application/vnd.openxmlformats-officedocument.spreadsheetml.sheet",
                   C::RawData},
    ExtensionEntry{"json", "application/json", C::RawData},
    ExtensionEntry{"xml", "application/xml", C::RawData},
    ExtensionEntry{"rds", "application/octet-stream", C::DerivedData},
    ExtensionEntry{"rda", "application/octet-stream", C::DerivedData},
    ExtensionEntry{"rdata", "application/octet-stream", C::DerivedData},
    ExtensionEntry{"feather", "application/vnd.apache.arrow.file", C::DerivedData},
    ExtensionEntry{"parquet", "application/vnd.apache.parquet", C::DerivedData},
    ExtensionEntry{"r", "text/x-r", C::Script},
    ExtensionEntry{"rmd", "text/x-markdown", C::Script},
    ExtensionEntry{"py", "text/x-python", C::Script},
    ExtensionEntry{"sql", "application/sql", C::Script},
    ExtensionEntry{"html", "text/html", C::RenderedDoc},
    ExtensionEntry{"pdf", "application/pdf", C::RenderedDoc},
    ExtensionEntry{"docx",
                   "application/vnd.openxmlformats-officedocument.wordprocessingml.document",
                   C::RenderedDoc},
    ExtensionEntry{"png", "image/png", C::Image},
    ExtensionEntry{"jpg", "image/jpeg", C::Image},
    ExtensionEntry{"jpeg", "image/jpeg", C::Image},
    ExtensionEntry{"gif", "image/gif", C::Image},
    ExtensionEntry{"svg", "image/svg+xml", C::Image},
    ExtensionEntry{"bmp", "image/bmp", C::Image},
    ExtensionEntry{"tiff", "image/tiff", C::Image},
    ExtensionEntry{"mp3", "audio/mpeg", C::Media},
    ExtensionEntry{"mp4", "video/mp4", C::Media},
    ExtensionEntry{"wav", "audio/wav", C::Media},
    ExtensionEntry{"mov", "video/quicktime", C::Media},
    ExtensionEntry{"avi", "video/x-msvideo", C::Media},
    ExtensionEntry{"md", "text/markdown", C::TextDoc},
    ExtensionEntry{"txt", "text/plain", C::TextDoc},
    ExtensionEntry{"bib", "text/x-bibtex", C::TextDoc},
    ExtensionEntry{"rproj", "text/rstudio", C::ProjectMetadata},
    ExtensionEntry{"gitignore", "text/plain", C::ProjectMetadata},
    ExtensionEntry{"license", "text/plain", C::ProjectMetadata},
    ExtensionEntry{"citation", "text/plain", C::ProjectMetadata},
    ExtensionEntry{"here", "text/plain", C::ProjectMetadata},
};

constexpr std::string_view kUnknownMime = "application/octet-stream";

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

std::string lower_stem(std::string_view path) {
  std::string_view name = base_name(path);
  auto dot = name.find('.', 1);
  if (dot != std::string_view::npos) name = name.substr(0, dot);
  return lower(name);
}

const ExtensionEntry* lookup(std::string_view ext) {
  for (const auto& e : kExtensionTable) {
    if (e.ext == ext) return &e;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(FileCategory c) {
  switch (c) {
    case C::RawData: return "raw-data";
    case C::DerivedData: return "derived-data";
    case C::Script: return "script";
    case C::RenderedDoc: return "rendered-doc";
    case C::Image: return "image";
    case C::Media: return "media";
    case C::TextDoc: return "text-doc";
    case C::ProjectMetadata: return "project-metadata";
    case C::Other: return "other";
  }
  return "other";
}

std::optional<FileCategory> parse_category(std::string_view s) {
  for (auto c : {C::RawData, C::DerivedData, C::Script, C::RenderedDoc, C::Image, C::Media,
                 C::TextDoc, C::ProjectMetadata, C::Other}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view base_name(std::string_view path) {
  auto slash = path.find_last_of("/\\");
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

std::string file_extension(std::string_view rel_path) {
  std::string_view name = base_name(rel_path);
  auto dot = name.rfind('.');
  if (dot == std::string_view::npos || dot + 1 == name.size()) return {};
  return lower(name.substr(dot + 1));
}

Classification classify_file(std::string_view rel_path) {
  const std::string ext = file_extension(rel_path);
  const ExtensionEntry* entry = lookup(ext);
  Classification out{std::string(entry ? entry->mime : kUnknownMime),
                     entry ? entry->category : C::Other};

  // LICENSE, LICENSE.md, CITATION: project metadata whatever the extension.
  const std::string stem = lower_stem(rel_path);
  if ((stem == "license" || stem == "licence" || stem == "citation") &&
      (ext.empty() || ext == "md" || ext == "txt" || ext == stem)) {
    out.category = C::ProjectMetadata;
    if (!entry) out.mime = "text/plain";
  }
  return out;
}

bool is_data_file(std::string_view path) {
  auto c = classify_file(path).category;
  return c == C::RawData || c == C::DerivedData;
}

bool is_image_file(std::string_view path) {
  return classify_file(path).category == C::Image;
}

bool is_text_file(std::string_view path) {
  auto cls = classify_file(path);
  return cls.mime.starts_with("text/") &&
         (cls.category == C::TextDoc || cls.category == C::ProjectMetadata);
}

bool is_r_file(std::string_view path) {
  static constexpr std::array kR{"r", "rmd", "rproj", "rds", "rda", "rdata"};
  const std::string ext = file_extension(path);
  return std::find(kR.begin(), kR.end(), ext) != kR.end();
}

bool is_readme(std::string_view path) {
  return lower_stem(path) == "readme";
}

bool is_project_marker_name(std::string_view name, bool is_directory) {
  if (is_directory) return name == ".git";
  return name == ".here" || file_extension(name) == "rproj";
}

std::size_t path_depth(std::string_view rel_path) {
  return static_cast<std::size_t>(std::count(rel_path.begin(), rel_path.end(), '/'));
}

const FileRecord* ProjectDir::find(std::string_view rel_path) const {
  auto it = std::lower_bound(files.begin(), files.end(), rel_path,
                             [](const FileRecord& f, std::string_view p) { return f.rel_path < p; });
  return it != files.end() && it->rel_path == rel_path ? &*it : nullptr;
}

ProjectDir scan_project(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw ScanError("not a project directory: " + root.string());
  }

  ProjectDir project;
  project.root = fs::weakly_canonical(fs::absolute(root));

  auto it = fs::recursive_directory_iterator(
      project.root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw ScanError("not a project directory: " + root.string() + ": " + ec.message());

  for (auto end = fs::recursive_directory_iterator(); it != end; it.increment(ec)) {
    if (ec) {
      project.warnings.push_back("cannot read entry: " + ec.message());
      ec.clear();
      continue;
    }
    const fs::directory_entry& entry = *it;
    const std::string rel = entry.path().lexically_relative(project.root).generic_string();
    const std::string name = entry.path().filename().string();

    const bool is_link = entry.is_symlink(ec);
    const bool is_dir = !is_link && entry.is_directory(ec);

    if (is_project_marker_name(name, is_dir)) project.root_markers.push_back(rel);

    if (is_dir) {
      if ((it.depth() == 0 && name == kStateDir) || name == ".git") {
        it.disable_recursion_pending();
      }
      continue;
    }

    if (is_link) {
      // Recorded, never followed. Links to directories are not descended.
      std::error_code target_ec;
      auto status = fs::status(entry.path(), target_ec);
      if (target_ec || !fs::exists(status)) {
        project.warnings.push_back("broken symlink: " + rel);
        continue;
      }
      if (!fs::is_regular_file(status)) continue;
    } else if (!entry.is_regular_file(ec)) {
      continue;
    }

    std::error_code size_ec;
    auto size = fs::file_size(entry.path(), size_ec);
    if (size_ec) {
      project.warnings.push_back("cannot stat: " + rel + ": " + size_ec.message());
      continue;
    }
    auto cls = classify_file(rel);
    project.files.push_back(FileRecord{rel, file_extension(rel), size, std::move(cls.mime),
                                       cls.category});
  }

  std::sort(project.files.begin(), project.files.end(),
            [](const FileRecord& a, const FileRecord& b) { return a.rel_path < b.rel_path; });
  std::sort(project.root_markers.begin(), project.root_markers.end());
  return project;
}

}  // namespace reprolint
