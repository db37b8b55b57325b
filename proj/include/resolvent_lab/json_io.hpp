#pragma once

#include <string>

#include "resolvent_lab/herglotz.hpp"

namespace resolvent_lab {

/// Parse a generator description:
///   {"form":"herglotz","atoms":[{"angle":0.0,"mass":1.0}],"gamma":0.0}
///   {"form":"omega","q":{"re":1,"im":0},"c":{"re":1,"im":0},"m":1}
Generator parse_generator(const std::string& text);

std::string generator_to_json(const Generator& gen);

/// 17-significant-digit decimal form that round-trips a double exactly.
std::string format_double(double v);

} // namespace resolvent_lab
