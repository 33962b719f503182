// Copyright 2026 The mmwtex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mmw: command-line driver for the body-texture pipeline.
//
//   mmw synth     generate a seeded synthetic dataset (PGM + manifest)
//   mmw extract   compute LBP/HOG features or pass embeddings through
//   mmw evaluate  verification and identification per part x algorithm
//   mmw fuse      evaluate feature-, score- or late-level fusion
//   mmw report    render results CSVs as Markdown tables
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 internal error.
// Links only the C interface in mmw/mmw.h.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmw/mmw.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

// A failed library call, carrying the status for exit-code mapping.
struct LibraryError : std::runtime_error {
  mmw_status status;
  LibraryError(mmw_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(mmw_status s, const std::string& context) {
  if (s != MMW_OK) throw LibraryError(s, context + ": " + mmw_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Manifest = std::unique_ptr<mmw_manifest, Deleter<mmw_manifest, mmw_manifest_free>>;
using FeatureSet = std::unique_ptr<mmw_featureset, Deleter<mmw_featureset, mmw_featureset_free>>;
using Scores = std::unique_ptr<mmw_scores, Deleter<mmw_scores, mmw_scores_free>>;
using Matrix = std::unique_ptr<mmw_matrix, Deleter<mmw_matrix, mmw_matrix_free>>;
using Softmax = std::unique_ptr<mmw_softmax, Deleter<mmw_softmax, mmw_softmax_free>>;

void log(const std::string& line) { std::cerr << "[mmw] " << line << '\n'; }

std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

mmw_part parse_part(const std::string& s) {
  mmw_part p;
  if (mmw_part_parse(s.c_str(), &p) != MMW_OK) throw UsageError("unknown body part '" + s + "'");
  return p;
}

std::vector<mmw_part> parse_parts(const std::vector<std::string>& names) {
  std::vector<mmw_part> out;
  for (const auto& n : names)
    for (const auto& piece : split(n, ',')) out.push_back(parse_part(piece));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Manifest load_manifest(const std::string& path) {
  mmw_manifest* m = nullptr;
  check(mmw_manifest_read(path.c_str(), &m), "reading manifest " + path);
  return Manifest(m);
}

FeatureSet load_features(const fs::path& path, mmw_feature_kind kind, const mmw_manifest* manifest) {
  mmw_featureset* f = nullptr;
  check(mmw_featureset_read(path.string().c_str(), kind, &f), "reading " + path.string());
  FeatureSet out(f);
  if (manifest != nullptr) check(mmw_featureset_annotate(out.get(), manifest), "annotating " + path.string());
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw LibraryError(MMW_E_IO, "cannot create " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw LibraryError(MMW_E_IO, "cannot write " + path.string());
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string out;
  std::size_t subjects = 50;
  std::size_t samples_per_pose = 4;
  double noise = 3.0;
  int pose_shift = 4;
  int texture_scale = 3;
  std::uint64_t seed = 0;
  std::vector<std::string> parts{"face", "torso", "wholebody"};
  bool no_identity = false;
};

void run_synth(const SynthArgs& a) {
  mmw_synth_config cfg;
  mmw_synth_config_default(&cfg);
  cfg.subjects = a.subjects;
  cfg.samples_per_pose = a.samples_per_pose;
  cfg.intra_noise = a.noise;
  cfg.pose_shift = a.pose_shift;
  cfg.texture_scale = a.texture_scale;
  cfg.seed = a.seed;
  cfg.identity_signal = a.no_identity ? 0 : 1;
  cfg.parts = 0;
  const auto parts = parse_parts(a.parts);
  for (mmw_part p : parts) cfg.parts |= 1u << p;
  check(mmw_synth_write(&cfg, a.out.c_str()), "synth");
  const std::size_t per_part = a.subjects * 2 * a.samples_per_pose;
  for (mmw_part p : parts)
    log(std::string(mmw_part_name(p)) + ": " + std::to_string(per_part) + " images in " +
        (fs::path(a.out) / mmw_part_name(p)).string());
  std::cout << (fs::path(a.out) / "manifest.csv").string() << '\n';
}

// ---------------------------------------------------------------------------
// extract

struct ExtractArgs {
  std::string manifest;
  std::string out;
  std::vector<std::string> algos{"lbp", "hog"};
  std::vector<std::string> parts;
  std::string boxes;
  std::vector<std::string> equalize;  // empty: face only
};

void run_extract(const ExtractArgs& a) {
  const Manifest manifest = load_manifest(a.manifest);
  std::vector<mmw_part> parts;
  if (a.parts.empty()) {
    const unsigned mask = mmw_manifest_parts(manifest.get());
    for (int p = MMW_PART_FACE; p <= MMW_PART_WHOLEBODY; ++p)
      if (mask & (1u << p)) parts.push_back(static_cast<mmw_part>(p));
  } else {
    parts = parse_parts(a.parts);
  }
  if (parts.empty()) throw LibraryError(MMW_E_INVALID_ARGUMENT, "manifest " + a.manifest + " is empty");

  mmw_extract_options opts;
  mmw_extract_options_default(&opts);
  if (!a.equalize.empty()) {
    std::fill(std::begin(opts.equalize), std::end(opts.equalize), 0);
    for (const auto& e : a.equalize)
      for (const auto& piece : split(e, ','))
        if (piece != "none") opts.equalize[parse_part(piece)] = 1;
  }
  ensure_dir(a.out);

  std::set<std::string> seen;
  for (const auto& raw : a.algos)
    for (const auto& algo : split(raw, ',')) {
      std::string name = algo;
      FeatureSet all;
      if (algo == "lbp" || algo == "hog") {
        opts.descriptor = algo == "lbp" ? MMW_DESC_LBP : MMW_DESC_HOG;
        mmw_featureset* f = nullptr;
        check(mmw_extract_manifest(manifest.get(), &opts, a.boxes.empty() ? nullptr : a.boxes.c_str(), &f),
              "extracting " + algo);
        all.reset(f);
      } else if (algo.rfind("embedding:", 0) == 0) {
        name = "embedding";
        all = load_features(algo.substr(10), MMW_KIND_EMBEDDING, manifest.get());
      } else {
        throw UsageError("unknown algorithm '" + algo + "' (expected lbp, hog or embedding:<file>)");
      }
      if (!seen.insert(name).second) throw UsageError("algorithm '" + name + "' given twice");
      for (mmw_part p : parts) {
        mmw_featureset* sel = nullptr;
        check(mmw_featureset_select_part(all.get(), p, &sel), "selecting part");
        const FeatureSet part_set(sel);
        if (mmw_featureset_size(part_set.get()) == 0)
          throw LibraryError(MMW_E_INSUFFICIENT_SAMPLES,
                             name + " has no " + mmw_part_name(p) + " records");
        const fs::path path = fs::path(a.out) / (std::string(mmw_part_name(p)) + "_" + name + ".mmwfeat");
        check(mmw_featureset_write(part_set.get(), path.string().c_str()), "writing " + path.string());
        log(path.filename().string() + ": " + std::to_string(mmw_featureset_size(part_set.get())) +
            " records, dim " + std::to_string(mmw_featureset_dim(part_set.get())));
      }
    }
}

// ---------------------------------------------------------------------------
// evaluate / fuse

struct EvalArgs {
  std::string features;
  std::string manifest;
  std::string out;
  std::string protocol = "frontal";
  std::uint64_t seed = 0;
  std::vector<std::string> parts;
  std::vector<std::string> algos;
  std::vector<std::string> fusions;
  std::string matcher = "cosine";
  mmw_train_config train{};
  std::size_t hidden = 0;
  bool individual = true;
};

// One evaluated configuration: a single feature file or a fusion of several.
struct Result {
  std::string id;   // file stem for CSV outputs
  std::string row;  // parts
  std::string col;  // algorithms, plus fusion level
  std::size_t genuine = 0, impostor = 0;
  double eer = 0.0, rank1 = 0.0;
};

struct Input {
  std::string part, algo;
  std::string id() const { return part + "_" + algo; }
};

Input parse_input(const std::string& id) {
  const auto pos = id.find('_');
  if (pos == std::string::npos || pos == 0 || pos + 1 == id.size())
    throw UsageError("fusion input '" + id + "' is not of the form <part>_<algorithm>");
  Input in{id.substr(0, pos), id.substr(pos + 1)};
  parse_part(in.part);
  return in;
}

struct FusionSpec {
  std::string level;  // feature | score | late
  std::vector<Input> inputs;
};

FusionSpec parse_fusion(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("fusion spec '" + text + "' must be <level>:<a>+<b>[+...]");
  FusionSpec spec;
  spec.level = text.substr(0, colon);
  if (spec.level == "cnn") spec.level = "late";
  if (spec.level != "feature" && spec.level != "score" && spec.level != "late")
    throw UsageError("unknown fusion level '" + spec.level + "' (feature, score or late)");
  for (const auto& id : split(text.substr(colon + 1), '+')) spec.inputs.push_back(parse_input(id));
  if (spec.inputs.size() < 2) throw UsageError("fusion '" + text + "' needs at least two inputs");
  if (spec.level == "late" && spec.inputs.size() != 2)
    throw UsageError("late fusion takes exactly two branches");
  return spec;
}

class Evaluator {
 public:
  explicit Evaluator(const EvalArgs& a) : args_(a), manifest_(load_manifest(a.manifest)) {
    if (mmw_protocol_parse(a.protocol.c_str(), &kind_) != MMW_OK)
      throw UsageError("unknown protocol '" + a.protocol + "' (frontal or crosspose)");
    mmw_protocol_default(&protocol_, kind_);
    protocol_.split_seed = a.seed;
    if (a.matcher != "cosine" && a.matcher != "softmax")
      throw UsageError("unknown matcher '" + a.matcher + "' (cosine or softmax)");
    ensure_dir(a.out);
  }

  const mmw_featureset* features(const Input& in) {
    auto it = cache_.find(in.id());
    if (it == cache_.end()) {
      const fs::path path = fs::path(args_.features) / (in.id() + ".mmwfeat");
      if (!fs::exists(path)) throw LibraryError(MMW_E_IO, "feature file " + path.string() + " not found");
      const mmw_feature_kind kind =
          in.algo == "lbp" ? MMW_KIND_LBP : in.algo == "hog" ? MMW_KIND_HOG : MMW_KIND_EMBEDDING;
      it = cache_.emplace(in.id(), load_features(path, kind, manifest_.get())).first;
    }
    return it->second.get();
  }

  Result individual(const Input& in) {
    const mmw_featureset* f = features(in);
    Result r{in.id(), in.part, in.algo};
    if (args_.matcher == "softmax") {
      mmw_matrix* m = nullptr;
      mmw_softmax* model = nullptr;
      check(mmw_identify_softmax(f, &protocol_, &args_.train, &m, &model), in.id());
      const Softmax keep(model);
      const fs::path model_path = out(in.id() + "_softmax.model");
      check(mmw_softmax_save(model, model_path.string().c_str()), "saving model");
      return from_matrix(std::move(r), Matrix(m));
    }
    mmw_scores* s = nullptr;
    check(mmw_verify(f, &protocol_, &s), in.id());
    mmw_matrix* m = nullptr;
    check(mmw_identify(f, &protocol_, &m), in.id());
    return finish(std::move(r), Scores(s), Matrix(m));
  }

  Result fused(const FusionSpec& spec) {
    std::vector<std::string> ids, parts, algos;
    for (const auto& in : spec.inputs) {
      ids.push_back(in.id());
      if (std::find(parts.begin(), parts.end(), in.part) == parts.end()) parts.push_back(in.part);
      if (std::find(algos.begin(), algos.end(), in.algo) == algos.end()) algos.push_back(in.algo);
    }
    Result r{spec.level + "_" + join(ids, "+"), join(parts, "+"), join(algos, "+") + " (" + spec.level + ")"};

    std::vector<const mmw_featureset*> sets;
    for (const auto& in : spec.inputs) sets.push_back(features(in));

    if (spec.level == "feature") {
      mmw_featureset* f = nullptr;
      check(mmw_featureset_fuse(sets.data(), sets.size(), &f), r.id);
      const FeatureSet fusedset(f);
      mmw_scores* s = nullptr;
      check(mmw_verify(f, &protocol_, &s), r.id);
      mmw_matrix* m = nullptr;
      check(mmw_identify(f, &protocol_, &m), r.id);
      return finish(std::move(r), Scores(s), Matrix(m));
    }
    if (spec.level == "late") {
      const std::size_t da = mmw_featureset_dim(sets[0]), db = mmw_featureset_dim(sets[1]);
      const std::size_t hidden = args_.hidden ? args_.hidden : da;
      if (hidden * (da + db) > 20'000'000)
        log("warning: late-fusion FC layer has " + std::to_string(hidden * (da + db)) +
            " weights; training will be slow (see --hidden)");
      mmw_matrix* m = nullptr;
      check(mmw_identify_late_fusion(sets[0], sets[1], &protocol_, &args_.train, args_.hidden, &m), r.id);
      return from_matrix(std::move(r), Matrix(m));
    }
    // Sum rule over cosine scores of each input.
    std::vector<Scores> score_sets;
    std::vector<Matrix> matrices;
    for (const auto* f : sets) {
      mmw_scores* s = nullptr;
      check(mmw_verify(f, &protocol_, &s), r.id);
      score_sets.emplace_back(s);
      mmw_matrix* m = nullptr;
      check(mmw_identify(f, &protocol_, &m), r.id);
      matrices.emplace_back(m);
    }
    std::vector<const mmw_scores*> sp;
    std::vector<const mmw_matrix*> mp;
    for (const auto& s : score_sets) sp.push_back(s.get());
    for (const auto& m : matrices) mp.push_back(m.get());
    mmw_scores* s = nullptr;
    check(mmw_scores_fuse(sp.data(), sp.size(), &s), r.id);
    mmw_matrix* m = nullptr;
    check(mmw_matrix_fuse(mp.data(), mp.size(), &m), r.id);
    return finish(std::move(r), Scores(s), Matrix(m));
  }

 private:
  fs::path out(const std::string& name) const { return fs::path(args_.out) / name; }

  // Classifier outputs: verification scores are the flattened probe x class matrix.
  Result from_matrix(Result r, Matrix m) {
    mmw_scores* s = nullptr;
    check(mmw_matrix_to_scores(m.get(), &s), r.id);
    return finish(std::move(r), Scores(s), std::move(m));
  }

  Result finish(Result r, Scores s, Matrix m) {
    r.genuine = mmw_scores_genuine_count(s.get());
    r.impostor = mmw_scores_impostor_count(s.get());
    check(mmw_scores_eer(s.get(), &r.eer, nullptr), r.id);
    check(mmw_matrix_rank_rate(m.get(), 1, &r.rank1), r.id);
    check(mmw_scores_write_csv(s.get(), out(r.id + "_scores.csv").string().c_str()), r.id);
    check(mmw_scores_write_det_csv(s.get(), out(r.id + "_det.csv").string().c_str()), r.id);
    check(mmw_matrix_write_cmc_csv(m.get(), out(r.id + "_cmc.csv").string().c_str()), r.id);
    log(r.id + ": " + std::to_string(r.genuine) + " genuine / " + std::to_string(r.impostor) +
        " impostor comparisons, EER " + percent(r.eer) + "%, R1 " + percent(r.rank1) + "%");
    return r;
  }

  const EvalArgs& args_;
  Manifest manifest_;
  mmw_protocol_kind kind_ = MMW_PROTOCOL_FRONTAL;
  mmw_protocol protocol_{};
  std::map<std::string, FeatureSet> cache_;
};

std::vector<Input> discover_inputs(const EvalArgs& a) {
  const std::vector<mmw_part> want_parts = parse_parts(a.parts);
  std::set<std::string> want_algos;
  for (const auto& raw : a.algos)
    for (const auto& piece : split(raw, ',')) want_algos.insert(piece);

  std::vector<Input> out;
  if (!fs::is_directory(a.features)) throw LibraryError(MMW_E_IO, "feature directory " + a.features + " not found");
  for (const auto& entry : fs::directory_iterator(a.features)) {
    if (entry.path().extension() != ".mmwfeat") continue;
    const std::string stem = entry.path().stem().string();
    const auto pos = stem.find('_');
    if (pos == std::string::npos) continue;
    mmw_part p;
    if (mmw_part_parse(stem.substr(0, pos).c_str(), &p) != MMW_OK) continue;
    Input in{mmw_part_name(p), stem.substr(pos + 1)};
    if (!want_parts.empty() && std::find(want_parts.begin(), want_parts.end(), p) == want_parts.end()) continue;
    if (!want_algos.empty() && !want_algos.count(in.algo)) continue;
    out.push_back(in);
  }
  // Parts in their canonical order, then algorithms alphabetically.
  std::sort(out.begin(), out.end(), [](const Input& x, const Input& y) {
    const mmw_part px = parse_part(x.part), py = parse_part(y.part);
    return px != py ? px < py : x.algo < y.algo;
  });
  return out;
}

std::string results_csv(const std::vector<Result>& results, const std::string& protocol) {
  std::string out = "id,row,column,protocol,genuine,impostor,eer,rank1\n";
  for (const auto& r : results)
    out += r.id + "," + r.row + "," + r.col + "," + protocol + "," + std::to_string(r.genuine) + "," +
           std::to_string(r.impostor) + "," + shortest(r.eer) + "," + shortest(r.rank1) + "\n";
  return out;
}

// Markdown table: rows in first-seen order, one column per (column label).
std::string markdown_table(const std::vector<Result>& results, bool eer) {
  std::vector<std::string> rows, cols;
  std::map<std::pair<std::string, std::string>, double> cell;
  for (const auto& r : results) {
    if (std::find(rows.begin(), rows.end(), r.row) == rows.end()) rows.push_back(r.row);
    if (std::find(cols.begin(), cols.end(), r.col) == cols.end()) cols.push_back(r.col);
    cell[{r.row, r.col}] = eer ? r.eer : r.rank1;
  }
  std::string out = std::string("| ") + (eer ? "EER (%)" : "R1 (%)");
  for (const auto& c : cols) out += " | " + c;
  out += " |\n|---";
  for (std::size_t i = 0; i < cols.size(); ++i) out += "|---:";
  out += "|\n";
  for (const auto& row : rows) {
    out += "| " + row;
    for (const auto& c : cols) {
      const auto it = cell.find({row, c});
      out += " | " + (it == cell.end() ? std::string("-") : percent(it->second));
    }
    out += " |\n";
  }
  return out;
}

std::string render_report(const std::vector<Result>& results, const std::string& protocol) {
  return "## Verification, " + protocol + " protocol\n\n" + markdown_table(results, true) +
         "\n## Identification, " + protocol + " protocol\n\n" + markdown_table(results, false);
}

void run_evaluate(const EvalArgs& a) {
  std::vector<FusionSpec> specs;
  for (const auto& f : a.fusions) specs.push_back(parse_fusion(f));
  Evaluator ev(a);
  std::vector<Result> results;
  if (a.individual) {
    const auto inputs = discover_inputs(a);
    if (inputs.empty() && specs.empty())
      throw LibraryError(MMW_E_IO, "no feature files matched in " + a.features);
    for (const auto& in : inputs) results.push_back(ev.individual(in));
  }
  for (const auto& spec : specs) results.push_back(ev.fused(spec));
  write_text(fs::path(a.out) / "results.csv", results_csv(results, a.protocol));
  const std::string report = render_report(results, a.protocol);
  write_text(fs::path(a.out) / "report.md", report);
  std::cout << report;
}

// ---------------------------------------------------------------------------
// report

std::vector<Result> read_results(const fs::path& path, std::string& protocol) {
  std::ifstream in(path);
  if (!in) throw LibraryError(MMW_E_IO, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("id,row,column,protocol,", 0) != 0)
    throw LibraryError(MMW_E_BAD_HEADER, path.string() + " is not a results file");
  std::vector<Result> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw LibraryError(MMW_E_PARSE, path.string() + ": malformed row '" + line + "'");
    Result r{f[0], f[1], f[2]};
    protocol = f[3];
    try {
      r.genuine = std::stoul(f[4]);
      r.impostor = std::stoul(f[5]);
      r.eer = std::stod(f[6]);
      r.rank1 = std::stod(f[7]);
    } catch (const std::exception&) {
      throw LibraryError(MMW_E_PARSE, path.string() + ": bad number in '" + line + "'");
    }
    out.push_back(r);
  }
  return out;
}

void run_report(const std::vector<std::string>& inputs, const std::string& out_path) {
  std::string text;
  for (const auto& raw : inputs) {
    fs::path p = raw;
    if (fs::is_directory(p)) p /= "results.csv";
    std::string protocol;
    const auto results = read_results(p, protocol);
    text += (text.empty() ? "" : "\n") + render_report(results, protocol);
  }
  if (!out_path.empty()) write_text(out_path, text);
  std::cout << text;
}

void add_train_options(CLI::App* cmd, EvalArgs& a) {
  cmd->add_option("--batch-size", a.train.batch_size, "SGD mini-batch size")->capture_default_str();
  cmd->add_option("--learning-rate", a.train.learning_rate, "SGD learning rate")->capture_default_str();
  cmd->add_option("--epochs", a.train.epochs, "training epochs")->capture_default_str();
  cmd->add_option("--train-seed", a.train.seed, "classifier initialisation and shuffling seed")
      ->capture_default_str();
}

void add_eval_options(CLI::App* cmd, EvalArgs& a) {
  cmd->add_option("--features", a.features, "directory of <part>_<algo>.mmwfeat files")->required();
  cmd->add_option("--manifest", a.manifest, "dataset manifest (restores pose and occlusion)")->required();
  cmd->add_option("--out", a.out, "output directory for CSVs")->required();
  cmd->add_option("--protocol", a.protocol, "frontal or crosspose")->capture_default_str();
  cmd->add_option("--seed", a.seed, "gallery/probe split seed")->capture_default_str();
  cmd->add_option("--hidden", a.hidden, "late-fusion hidden width (0: width of first branch)")
      ->capture_default_str();
  add_train_options(cmd, a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmw: millimeter-wave body-texture recognition toolkit"};
  app.set_config("--config", "", "INI configuration file with one [subcommand] section each; command-line flags override it");
  app.require_subcommand(1);
  app.set_version_flag("--version", mmw_version());

  SynthArgs synth;
  auto* cmd_synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
  cmd_synth->add_option("--out", synth.out, "output directory")->required();
  cmd_synth->add_option("--subjects", synth.subjects, "number of subjects")->capture_default_str();
  cmd_synth->add_option("--samples-per-pose", synth.samples_per_pose, "scans per subject and pose")
      ->capture_default_str();
  cmd_synth->add_option("--noise", synth.noise, "intra-class noise std (intensity levels)")->capture_default_str();
  cmd_synth->add_option("--pose-shift", synth.pose_shift, "horizontal shift of lateral scans (pixels)")
      ->capture_default_str();
  cmd_synth->add_option("--texture-scale", synth.texture_scale, "box kernel width of the base texture")
      ->capture_default_str();
  cmd_synth->add_option("--seed", synth.seed, "generator seed")->capture_default_str();
  cmd_synth->add_option("--parts", synth.parts, "body parts (face,torso,wholebody)")->delimiter(',');
  cmd_synth->add_flag("--no-identity", synth.no_identity, "give every scan its own texture (chance-level data)");

  ExtractArgs extract;
  auto* cmd_extract = app.add_subcommand("extract", "compute per-part feature files");
  cmd_extract->add_option("--manifest", extract.manifest, "dataset manifest")->required();
  cmd_extract->add_option("--out", extract.out, "output directory")->required();
  cmd_extract->add_option("--algo", extract.algos, "lbp, hog, embedding:<file>")->delimiter(',');
  cmd_extract->add_option("--parts", extract.parts, "restrict to these parts")->delimiter(',');
  cmd_extract->add_option("--boxes", extract.boxes, "bounding-box sidecar (sample_id part x y w h)");
  cmd_extract->add_option("--equalize", extract.equalize, "parts to histogram-equalize (default face; 'none')")
      ->delimiter(',');

  EvalArgs eval;
  eval.train = {};
  mmw_train_config_default(&eval.train);
  auto* cmd_eval = app.add_subcommand("evaluate", "verification and identification report");
  add_eval_options(cmd_eval, eval);
  cmd_eval->add_option("--parts", eval.parts, "restrict to these parts")->delimiter(',');
  cmd_eval->add_option("--algos", eval.algos, "restrict to these algorithms")->delimiter(',');
  cmd_eval->add_option("--fusion", eval.fusions, "extra fusion columns, e.g. score:torso_lbp+torso_hog");
  cmd_eval->add_option("--matcher", eval.matcher, "cosine or softmax")->capture_default_str();

  EvalArgs fuse;
  mmw_train_config_default(&fuse.train);
  std::string fuse_level = "score";
  std::vector<std::string> fuse_inputs;
  auto* cmd_fuse = app.add_subcommand("fuse", "evaluate one fusion of two or more feature files");
  add_eval_options(cmd_fuse, fuse);
  cmd_fuse->add_option("--level", fuse_level, "feature, score or late")->capture_default_str();
  cmd_fuse->add_option("--inputs", fuse_inputs, "feature ids, e.g. face_lbp,torso_lbp")
      ->required()
      ->delimiter(',');

  std::vector<std::string> report_inputs;
  std::string report_out;
  auto* cmd_report = app.add_subcommand("report", "render results.csv files as Markdown");
  cmd_report->add_option("results", report_inputs, "results.csv files or evaluate output directories")
      ->required();
  cmd_report->add_option("--out", report_out, "also write the Markdown here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_synth) run_synth(synth);
    if (*cmd_extract) run_extract(extract);
    if (*cmd_eval) run_evaluate(eval);
    if (*cmd_fuse) {
      fuse.individual = false;
      fuse.fusions = {fuse_level + ":" + join(fuse_inputs, "+")};
      run_evaluate(fuse);
    }
    if (*cmd_report) run_report(report_inputs, report_out);
  } catch (const UsageError& e) {
    std::cerr << "mmw: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LibraryError& e) {
    std::cerr << "mmw: " << e.what() << '\n';
    return e.status == MMW_E_INTERNAL ? kExitInternal : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "mmw: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
