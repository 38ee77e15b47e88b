#pragma once

#include "vnscale/clustering.hpp"
#include "vnscale/dimred.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace vnscale::io {

enum class Format { csv, json };

/// "csv" or "json"; anything else throws InvalidArgument.
Format parse_format(std::string_view s);

/// Format from a file extension; defaults to CSV.
Format format_for_path(const std::filesystem::path& p);

// Point clouds. CSV has a header "x0,...,x{d-1}[,label]" and one row per point.
// A headerless all-numeric CSV is read as coordinates only.
void write_cloud_csv(std::ostream& os, const PointCloud& c);
PointCloud read_cloud_csv(std::istream& is);
nlohmann::json cloud_to_json(const PointCloud& c);
PointCloud cloud_from_json(const nlohmann::json& j);

void save_cloud(const std::filesystem::path& p, const PointCloud& c, Format f);
/// Reads CSV or JSON, chosen by extension.
PointCloud load_cloud(const std::filesystem::path& p);

// Graph edge list: "n r" header, then "i j w" per edge.
void write_graph(std::ostream& os, const WeightedGraph& g);
WeightedGraph read_graph(std::istream& is);

/// {"mu": [...], "note": ...}; eigenvectors only when requested and present.
nlohmann::json spectrum_to_json(const Spectrum& s, bool with_vectors = false);

// Entropy profile. CSV header "r,entropy".
void write_profile_csv(std::ostream& os, const EntropyProfile& p);
EntropyProfile read_profile_csv(std::istream& is);
nlohmann::json profile_to_json(const EntropyProfile& p, const ScaleSelection& sel);

nlohmann::json assignment_to_json(const ClusterAssignment& a, const std::string& profile_ref);
nlohmann::json kmeans_to_json(const KMeansResult& r);

/// Header "truth,pred_0,...,pred_{k-1}", one row per true class.
void write_confusion_csv(std::ostream& os, const ConfusionMatrix& m);

/// One row per point: k coordinates, then the label when given.
void write_embedding_csv(std::ostream& os, const Embedding& e, const std::vector<int>* labels);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

}  // namespace vnscale::io
