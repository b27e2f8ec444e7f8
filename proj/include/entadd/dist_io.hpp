#pragma once

#include "entadd/finite_dist.hpp"
#include "entadd/joint_dist.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace entadd {

// Text formats. Distribution:
//   @group int | intvec <d> | zmod <m>      (optional, default int)
//   <value> <num>/<den>                      one atom per line, '#' comments
// Joint (extension of the above):
//   @joint X,Y
//   (x,y) <num>/<den>
// Set: one value per line.
// Masses must sum to exactly 1; the loader reports the residual otherwise.

GroupValue parse_value(std::string_view token, const GroupValue::Family& family);

FiniteDist parse_distribution(std::string_view text, const std::string& source = "<input>");
FiniteDist load_distribution(const std::string& path);
std::string format_distribution(const FiniteDist& d);

JointDist parse_joint(std::string_view text, const std::string& source = "<input>");
JointDist load_joint(const std::string& path);
std::string format_joint(const JointDist& j);

std::vector<GroupValue> parse_set(std::string_view text, const std::string& source = "<input>");
std::vector<GroupValue> load_set(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace entadd
