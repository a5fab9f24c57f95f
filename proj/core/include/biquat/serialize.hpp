#pragma once

#include <string>
#include <string_view>

#include "biquat/frame.hpp"
#include "biquat/integration.hpp"

namespace biquat {

/// {"a1":[re,im],"a2":[re,im],"b1":[re,im],"b2":[re,im]}, numbers emitted
/// with 17 significant digits.
std::string frame_to_json(const Frame& fr);
Frame frame_from_json(std::string_view text);

/// Vertex-array form: either [[x,y,z],...] or
/// {"vertices":[[x,y,z],...],"closed":bool}.
std::string polyline_to_json(const Polyline& path);
Polyline polyline_from_json(std::string_view text);

}  // namespace biquat
