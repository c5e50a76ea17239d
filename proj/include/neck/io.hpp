#pragma once

#include <filesystem>
#include <string>

#include "neck/warped.hpp"

namespace neck {

/// JSON piece descriptor: kind, L, m | p, q, and the node jets as sample columns.
std::string profile_to_json(const PieceProfile& profile);
PieceProfile profile_from_json(const std::string& text);

/// CSV with a "# kind=... m=..." comment line, then columns
/// s,phi,dphi,d2phi (warped) or s,a,b,da,db,d2a,d2b (doubly warped).
std::string profile_to_csv(const PieceProfile& profile);
PieceProfile profile_from_csv(const std::string& text);

/// Whole-file helpers; throw IoFailure.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace neck
