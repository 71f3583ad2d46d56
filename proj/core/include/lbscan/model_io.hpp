#pragma once

#include <string>

#include "lbscan/baseline.hpp"
#include "lbscan/cluster2d.hpp"

namespace lbscan {

// Models travel as single JSON documents with a format/version envelope and a
// type tag, so one file format covers both assignment-function flavors.
// Coordinates survive the round trip bit for bit.
enum class ModelKind { hdbscan, baseline };

std::string to_json(const ClusterModel& model);
std::string to_json(const BaselineModel& model);

// All three throw ParseError on malformed documents, wrong format tags or
// unsupported versions.
ModelKind model_kind_from_json(const std::string& text);
ClusterModel cluster_model_from_json(const std::string& text);
BaselineModel baseline_model_from_json(const std::string& text);

void save_model_file(const ClusterModel& model, const std::string& path);
void save_model_file(const BaselineModel& model, const std::string& path);
std::string read_text_file(const std::string& path);

}  // namespace lbscan
