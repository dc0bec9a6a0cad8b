#pragma once

#include <functional>
#include <string_view>

namespace hazard {

using WarningSink = std::function<void(std::string_view)>;

/// Routes library warnings. The default sink writes to stderr; pass an empty
/// function to silence them. Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

} // namespace hazard
