#pragma once

#include <string>

#include "gasplan/model.hpp"

namespace gasplan {

enum class FileFormat { LP, MpsFree, MpsFixed };

// Byte-deterministic emission: identical models produce identical files.
std::string emit_to_string(const ModelInstance& model, FileFormat format);
void emit_to_file(const ModelInstance& model, FileFormat format, const std::string& path);

}  // namespace gasplan
