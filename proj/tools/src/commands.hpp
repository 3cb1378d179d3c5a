#pragma once

#include <iosfwd>

#include "config.hpp"

namespace alseg::cli {

void cmd_tile(const PipelineConfig& c, std::ostream& out);
void cmd_stitch(const PipelineConfig& c, std::ostream& out);
void cmd_fuse(const PipelineConfig& c, std::ostream& out);
void cmd_cc(const PipelineConfig& c, std::ostream& out);
void cmd_select(const PipelineConfig& c, std::ostream& out);
void cmd_evaluate(const PipelineConfig& c, std::ostream& out);
void cmd_report(const PipelineConfig& c, std::ostream& out);

}  // namespace alseg::cli
