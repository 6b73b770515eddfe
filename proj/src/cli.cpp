// Copyright 2026 The dialectid Authors. All Rights Reserved.
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

#include "dialectid/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dialectid/classifier.hpp"
#include "dialectid/config_file.hpp"
#include "dialectid/corpus.hpp"
#include "dialectid/error.hpp"
#include "dialectid/nasalization.hpp"
#include "dialectid/synth.hpp"
#include "dialectid/wav.hpp"

namespace dialectid::cli {
namespace {

using json = nlohmann::ordered_json;

enum class Format { kText, kRecords };

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string output = "-";
  Format format = Format::kText;
};

std::string Fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

json MetricsJson(const Metrics &m) {
  return {{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

json ConfusionJson(const ConfusionMatrix &c) {
  return {{"tp", c.tp}, {"fn", c.fn}, {"fp", c.fp}, {"tn", c.tn}};
}

json DecisionJson(const Decision &d) {
  return {{"label", ToString(d.label)}, {"lt_score", d.lt_score}, {"ct_score", d.ct_score},
          {"lt_per_frame", d.lt_per_frame()}, {"ct_per_frame", d.ct_per_frame()},
          {"tie", d.tie}, {"frames", d.num_frames}};
}

json PeakJson(const std::optional<nasal::FormantPeak> &p) {
  if (!p) return nullptr;
  return {{"frequency_hz", p->frequency_hz}, {"magnitude_db", p->magnitude_db}};
}

json SummaryJson(const nasal::NasalizationReport &r) {
  json j = {{"frames", r.frames.size()},
            {"analyzed_frames", r.analyzed_frames},
            {"detected_frames", r.detected_frames},
            {"fraction_with_peak", r.fraction_with_peak()}};
  j["median_frequency_hz"] = nullptr;
  j["median_magnitude_db"] = nullptr;
  if (r.summary && r.summary->median_frequency_hz) {
    j["median_frequency_hz"] = *r.summary->median_frequency_hz;
    j["median_magnitude_db"] = *r.summary->median_magnitude_db;
  }
  return j;
}

class Command {
 public:
  Command(GlobalOptions &globals, std::ostream &out) : globals_(globals), out_(out) {}

  ToolConfig LoadToolConfig() const {
    ToolConfig c;
    if (!globals_.config_path.empty()) ApplyConfigFile(c, globals_.config_path);
    if (globals_.seed) c.train.rng_seed = *globals_.seed;
    return c;
  }

  std::ostringstream &text() { return buffer_; }
  void Record(const json &j) { buffer_ << j.dump() << '\n'; }
  bool records() const { return globals_.format == Format::kRecords; }

  void Flush() {
    if (globals_.output == "-") {
      out_ << buffer_.str();
      return;
    }
    std::ofstream f(globals_.output, std::ios::binary);
    if (!f) Fail(ErrorKind::kIo, "cannot open " + globals_.output + " for writing");
    f << buffer_.str();
    if (!f) Fail(ErrorKind::kIo, "failed writing " + globals_.output);
  }

 private:
  GlobalOptions &globals_;
  std::ostream &out_;
  std::ostringstream buffer_;
};

// ---- extract ---------------------------------------------------------------

struct ExtractArgs {
  std::string audio;
  bool csv = false;
  bool static_only = false;
};

void RunExtract(Command &cmd, const ExtractArgs &a, GlobalOptions &g) {
  const auto config = cmd.LoadToolConfig().mfcc;
  const auto signal = corpus::ReadAudio(a.audio, config.sample_rate);
  const auto features = a.static_only ? dsp::ExtractMfcc13(signal, config)
                                      : dsp::ExtractFeatures(signal, config);
  if (a.csv) {
    WriteFeaturesCsv(features, cmd.text());
  } else {
    if (g.output == "-") Fail(ErrorKind::kInvalidArgument, "binary features need --output <file>; use --csv for stdout");
    WriteFeatures(features, cmd.text());
  }
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string manifest;
  std::optional<std::size_t> components;
  std::string out_dir;
};

void RunTrain(Command &cmd, const TrainArgs &a) {
  auto config = cmd.LoadToolConfig();
  if (a.components) config.train.num_components = *a.components;
  config.train.Validate();
  const auto manifest = corpus::LoadManifest(a.manifest);
  const auto frames = PoolTrainingFrames(manifest, config.mfcc);
  ClassifierBundle bundle;
  bundle.feature_config = config.mfcc;
  bundle.train_config = config.train;
  const auto lt = gmm::EmFit(frames.lt, config.train);
  const auto ct = gmm::EmFit(frames.ct, config.train);
  bundle.lt_model = lt.model;
  bundle.ct_model = ct.model;
  SaveBundle(bundle, a.out_dir);
  for (const auto &[d, fit, n] : {std::tuple{Dialect::kLT, &lt, frames.lt.num_frames()},
                                  std::tuple{Dialect::kCT, &ct, frames.ct.num_frames()}}) {
    const double ll = fit->log_likelihood_trace.back();
    if (cmd.records()) {
      cmd.Record({{"type", "model"}, {"dialect", ToString(d)},
                  {"num_components", fit->model.num_components}, {"frames", n},
                  {"em_iterations", fit->em_iterations}, {"converged", fit->converged},
                  {"log_likelihood", ll}, {"reseeded_components", fit->reseeded_components}});
    } else {
      cmd.text() << ToString(d) << ": " << fit->model.num_components << " components, " << n
                 << " frames, " << fit->em_iterations << " EM iterations"
                 << (fit->converged ? " (converged)" : " (iteration cap)")
                 << ", avg log-likelihood " << Fixed(ll / static_cast<double>(n)) << "\n";
    }
  }
  if (!cmd.records()) cmd.text() << "bundle written to " << a.out_dir << "\n";
}

// ---- classify --------------------------------------------------------------

struct ClassifyArgs {
  std::string bundle;
  std::string audio;
};

void RunClassify(Command &cmd, const ClassifyArgs &a) {
  const auto bundle = LoadBundle(a.bundle);
  const auto signal = corpus::ReadAudio(a.audio, bundle.feature_config.sample_rate);
  const auto d = ClassifyUtterance(bundle, signal);
  if (cmd.records()) {
    json j = {{"type", "decision"}, {"audio_path", a.audio}};
    j.update(DecisionJson(d));
    cmd.Record(j);
  } else {
    cmd.text() << ToString(d.label) << "\tlt_score=" << Fixed(d.lt_score)
               << "\tct_score=" << Fixed(d.ct_score) << (d.tie ? "\ttie" : "") << "\n";
  }
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  std::string manifest;
  std::string bundle;
};

void RequireDisjoint(const corpus::CorpusManifest &m) {
  const auto v = corpus::ValidateSplit(m);
  if (!v.passed()) {
    std::string ids;
    for (const auto &s : v.overlapping_speakers) ids += (ids.empty() ? "" : ", ") + s;
    Fail(ErrorKind::kInvariantViolation, "speakers in both train and test: " + ids);
  }
}

void EmitReport(Command &cmd, const EvalReport &r) {
  const auto &c = r.confusion;
  const auto &m = r.metrics;
  if (cmd.records()) {
    for (const auto &u : r.decisions) {
      json j = {{"type", "utterance"}, {"audio_path", u.audio_path},
                {"speaker_id", u.speaker_id}, {"truth", ToString(u.truth)}};
      j.update(DecisionJson(u.decision));
      j["correct"] = u.truth == u.decision.label;
      cmd.Record(j);
    }
    cmd.Record({{"type", "summary"}, {"utterances", c.total()},
                {"confusion", ConfusionJson(c)}, {"metrics", MetricsJson(m)}});
    return;
  }
  auto &t = cmd.text();
  for (const auto &u : r.decisions)
    t << u.audio_path << "\ttruth=" << ToString(u.truth) << "\tpred="
      << ToString(u.decision.label) << "\tlt=" << Fixed(u.decision.lt_score)
      << "\tct=" << Fixed(u.decision.ct_score) << (u.decision.tie ? "\ttie" : "") << "\n";
  t << "\nconfusion (rows truth, cols predicted; LT positive)\n"
    << "          LT      CT\n"
    << "  LT  " << std::setw(6) << c.tp << "  " << std::setw(6) << c.fn << "\n"
    << "  CT  " << std::setw(6) << c.fp << "  " << std::setw(6) << c.tn << "\n"
    << "utterances " << c.total() << "\n"
    << "accuracy   " << Fixed(m.accuracy) << "\n"
    << "precision  " << Fixed(m.precision) << "\n"
    << "recall     " << Fixed(m.recall) << "\n"
    << "f1         " << Fixed(m.f1) << "\n";
}

void RunEvaluate(Command &cmd, const EvaluateArgs &a) {
  const auto manifest = corpus::LoadManifest(a.manifest);
  RequireDisjoint(manifest);
  const auto bundle = LoadBundle(a.bundle);
  EmitReport(cmd, Evaluate(bundle, manifest));
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string manifest;
  std::string test_manifest;
  std::vector<std::size_t> components = kDefaultSweepCounts;
};

void RunSweep(Command &cmd, const SweepArgs &a) {
  const auto config = cmd.LoadToolConfig();
  config.train.Validate();
  const auto train = corpus::LoadManifest(a.manifest);
  const auto test = a.test_manifest.empty() ? train : corpus::LoadManifest(a.test_manifest);
  RequireDisjoint(train);
  if (!a.test_manifest.empty()) {
    corpus::CorpusManifest both = train;
    both.records.insert(both.records.end(), test.records.begin(), test.records.end());
    RequireDisjoint(both);
  }
  const auto rows = SweepMixtures(train, test, config.mfcc, config.train, a.components);
  if (!cmd.records()) cmd.text() << "components  accuracy(%)  seconds  status\n";
  for (const auto &r : rows) {
    if (cmd.records()) {
      json j = {{"type", "sweep_row"}, {"num_components", r.num_components},
                {"status", r.ok ? "ok" : "failed"}};
      j["accuracy"] = r.ok ? json(r.metrics.accuracy) : json(nullptr);
      j["metrics"] = r.ok ? MetricsJson(r.metrics) : json(nullptr);
      j["confusion"] = r.ok ? ConfusionJson(r.confusion) : json(nullptr);
      j["seconds"] = r.seconds;
      if (!r.ok) j["error"] = r.error;
      cmd.Record(j);
    } else {
      char line[160];
      std::snprintf(line, sizeof(line), "%10zu  %11s  %7.2f  %s\n", r.num_components,
                    r.ok ? Fixed(100.0 * r.metrics.accuracy, 2).c_str() : "-", r.seconds,
                    r.ok ? "ok" : ("failed: " + r.error).c_str());
      cmd.text() << line;
    }
  }
}

// ---- nasal -----------------------------------------------------------------

struct NasalArgs {
  std::string audio;
  std::string manifest;
  std::optional<double> start_s;
  std::optional<double> end_s;
  std::string spectra;
};

void EmitNasalFrames(Command &cmd, const std::string &source, const nasal::NasalizationReport &r) {
  for (const auto &f : r.frames) {
    if (cmd.records()) {
      cmd.Record({{"type", "frame"}, {"source", source}, {"index", f.index},
                  {"start_s", f.start_s}, {"status", nasal::ToString(f.status)},
                  {"peak", PeakJson(f.peak)}});
    }
  }
  if (cmd.records()) {
    json j = {{"type", "summary"}, {"source", source}};
    j.update(SummaryJson(r));
    cmd.Record(j);
  } else {
    const auto s = SummaryJson(r);
    cmd.text() << source << ": " << r.detected_frames << "/" << r.analyzed_frames
               << " analyzed frames with a low-band peak (" << r.frames.size()
               << " total), fraction " << Fixed(r.fraction_with_peak(), 3);
    if (r.summary && r.summary->median_frequency_hz)
      cmd.text() << ", median " << Fixed(*r.summary->median_frequency_hz, 1) << " Hz at "
                 << Fixed(*r.summary->median_magnitude_db, 2) << " dB";
    cmd.text() << "\n";
  }
}

void WriteSpectra(std::ostream &out, const std::string &source,
                  const nasal::NasalizationReport &r, const nasal::NasalConfig &c) {
  for (const auto &f : r.frames) {
    if (f.spectrum_db.empty()) continue;
    out << "# " << source << " frame " << f.index << " start_s " << corpus::FormatDouble(f.start_s)
        << "\n";
    for (std::size_t i = 0; i < f.spectrum_db.size(); ++i)
      out << corpus::FormatDouble(nasal::BinFrequency(i, c.fft_size, c.sample_rate)) << '\t'
          << corpus::FormatDouble(f.spectrum_db[i]) << '\n';
    out << '\n';
  }
}

void RunNasal(Command &cmd, const NasalArgs &a) {
  auto config = cmd.LoadToolConfig().nasal;
  config.keep_spectra = !a.spectra.empty();
  config.Validate();
  std::ostringstream spectra;
  if (!a.audio.empty()) {
    auto signal = corpus::ReadAudio(a.audio, config.sample_rate);
    if (a.start_s || a.end_s)
      signal = corpus::Slice(signal, a.start_s.value_or(0.0),
                             a.end_s.value_or(signal.duration_seconds()));
    const auto report = nasal::AnalyzeSegment(signal, config);
    EmitNasalFrames(cmd, a.audio, report);
    WriteSpectra(spectra, a.audio, report, config);
  } else {
    const auto manifest = corpus::LoadManifest(a.manifest);
    std::map<Dialect, std::vector<nasal::NasalizationReport>> by_dialect;
    for (const auto &rec : manifest.records) {
      auto signal = corpus::ReadAudio(manifest.Resolve(rec), config.sample_rate);
      if (rec.segment) signal = corpus::Slice(signal, rec.segment->start_s, rec.segment->end_s);
      auto report = nasal::AnalyzeSegment(signal, config);
      EmitNasalFrames(cmd, rec.audio_path, report);
      WriteSpectra(spectra, rec.audio_path, report, config);
      by_dialect[rec.dialect].push_back(std::move(report));
    }
    std::map<Dialect, nasal::NasalizationReport> pooled;
    for (auto &[d, reports] : by_dialect) {
      pooled[d] = nasal::MergeReports(reports);
      EmitNasalFrames(cmd, "pooled:" + std::string(ToString(d)), nasal::NasalizationReport{
                                                                     {}, pooled[d].analyzed_frames,
                                                                     pooled[d].detected_frames,
                                                                     pooled[d].summary});
    }
    if (pooled.count(Dialect::kLT) && pooled.count(Dialect::kCT)) {
      const auto cmp = nasal::CompareDegree(pooled[Dialect::kLT], pooled[Dialect::kCT]);
      if (cmd.records())
        cmd.Record({{"type", "comparison"}, {"verdict", nasal::ToString(cmp.verdict)},
                    {"difference_db", cmp.difference_db}});
      else
        cmd.text() << "verdict " << nasal::ToString(cmp.verdict) << ", CT - LT = "
                   << Fixed(cmp.difference_db, 2) << " dB\n";
    }
  }
  if (!a.spectra.empty()) {
    std::ofstream f(a.spectra);
    f << spectra.str();
    if (!f) Fail(ErrorKind::kIo, "failed writing " + a.spectra);
  }
}

// ---- validate / stats ------------------------------------------------------

bool RunValidate(Command &cmd, const std::string &path) {
  const auto manifest = corpus::LoadManifest(path);
  const auto v = corpus::ValidateSplit(manifest);
  const auto unreadable = corpus::UnreadableFiles(manifest);
  const bool ok = v.passed() && unreadable.empty();
  if (cmd.records()) {
    cmd.Record({{"type", "validation"}, {"records", manifest.records.size()}, {"passed", ok},
                {"overlapping_speakers", v.overlapping_speakers}, {"warnings", v.warnings},
                {"unreadable_files", unreadable}});
  } else {
    auto &t = cmd.text();
    t << manifest.records.size() << " records\n";
    for (const auto &s : v.overlapping_speakers) t << "speaker in both splits: " << s << "\n";
    for (const auto &f : unreadable) t << "unreadable: " << f << "\n";
    for (const auto &w : v.warnings) t << "warning: " << w << "\n";
    t << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok;
}

void RunStats(Command &cmd, const std::string &path) {
  const auto stats = corpus::ComputeStats(corpus::LoadManifest(path));
  if (!cmd.text().tellp() && !cmd.records())
    cmd.text() << "dialect  split  hours     h:mm:ss    utts  speakers  male  female  other\n";
  for (const auto &r : stats.rows) {
    const std::string split = r.split ? std::string(ToString(*r.split)) : "all";
    if (cmd.records()) {
      cmd.Record({{"type", "stats"}, {"dialect", ToString(r.dialect)}, {"split", split},
                  {"seconds", r.seconds}, {"hours", r.hours()}, {"utterances", r.utterances},
                  {"speakers", r.speakers}, {"male_speakers", r.male_speakers},
                  {"female_speakers", r.female_speakers},
                  {"unspecified_speakers", r.unspecified_speakers}, {"partial", r.partial()},
                  {"unreadable", r.unreadable}});
    } else {
      char line[200];
      std::snprintf(line, sizeof(line), "%-7s  %-5s  %8.4f  %9s  %5zu  %8zu  %4zu  %6zu  %5zu%s\n",
                    std::string(ToString(r.dialect)).c_str(), split.c_str(), r.hours(),
                    corpus::FormatHms(r.seconds).c_str(), r.utterances, r.speakers,
                    r.male_speakers, r.female_speakers, r.unspecified_speakers,
                    r.partial() ? "  (partial)" : "");
      cmd.text() << line;
    }
  }
}

// ---- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string out_dir;
  std::string kind = "dialect";
  corpus::SynthConfig config;
};

void RunSynth(Command &cmd, SynthArgs a, const GlobalOptions &g) {
  a.config.kind = a.kind == "nasal" ? corpus::SynthKind::kNasal : corpus::SynthKind::kDialect;
  if (g.seed) a.config.seed = *g.seed;
  const auto result = corpus::GenerateCorpus(a.out_dir, a.config);
  std::size_t total = 0;
  for (const auto &[key, c] : result.truth.cells) total += c.utterances;
  if (cmd.records())
    cmd.Record({{"type", "synth"}, {"manifest", result.manifest_path.string()},
                {"truth", result.truth_path.string()}, {"utterances", total}});
  else
    cmd.text() << "wrote " << total << " utterances, manifest " << result.manifest_path.string()
               << "\n";
}

std::string ConfigKeysHelp() {
  std::string s = "Config file keys (key = value) and defaults:\n";
  for (const auto &[k, v] : ListSettings(ToolConfig{})) s += "  " + k + " = " + v + "\n";
  return s;
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Literary/colloquial Tamil dialect identification with MFCC-GMM models, "
               "plus LP-spectrum nasalization analysis."};
  app.name("dialectid");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(ConfigKeysHelp());

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for every randomized step (k-means seeding, synth)");
  app.add_option("--config", g.config_path, "Flat key = value config overriding defaults")
      ->check(CLI::ExistingFile);
  app.add_option("--output", g.output, "Output path for the command's report ('-' = stdout)");
  std::map<std::string, Format> formats{{"text", Format::kText}, {"records", Format::kRecords}};
  app.add_option("--format", g.format, "Report format: text or records (JSON lines)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("text");

  ExtractArgs extract;
  auto *c_extract = app.add_subcommand("extract", "Write the 39-dim CMS-normalized MFCC matrix");
  c_extract->add_option("--audio", extract.audio, "16-bit mono 16 kHz WAV")->required();
  c_extract->add_flag("--csv", extract.csv, "Emit CSV (one frame per line) instead of binary");
  c_extract->add_flag("--static-only", extract.static_only, "Emit only the 13 static cepstra");

  TrainArgs train;
  auto *c_train = app.add_subcommand("train", "Fit one GMM per dialect on the train split");
  c_train->add_option("--manifest", train.manifest, "Corpus manifest (TSV)")->required();
  c_train->add_option("--components", train.components,
                      "Mixture components per dialect (default: train.num_components = 16)");
  c_train->add_option("--out", train.out_dir, "Bundle directory to create")->required();

  ClassifyArgs classify;
  auto *c_classify = app.add_subcommand("classify", "Classify one utterance as LT or CT");
  c_classify->add_option("--bundle", classify.bundle, "Trained bundle directory")->required();
  c_classify->add_option("--audio", classify.audio, "16-bit mono 16 kHz WAV")->required();

  EvaluateArgs evaluate;
  auto *c_eval = app.add_subcommand("evaluate", "Evaluate a bundle on the test split");
  c_eval->add_option("--manifest", evaluate.manifest, "Corpus manifest (TSV)")->required();
  c_eval->add_option("--bundle", evaluate.bundle, "Trained bundle directory")->required();

  SweepArgs sweep;
  auto *c_sweep = app.add_subcommand("sweep", "Train and evaluate across mixture counts");
  c_sweep->add_option("--manifest", sweep.manifest, "Manifest providing the train split")
      ->required();
  c_sweep->add_option("--test-manifest", sweep.test_manifest,
                      "Manifest providing the test split (default: --manifest)");
  c_sweep->add_option("--components", sweep.components, "Comma-separated component counts")
      ->delimiter(',')
      ->default_str("16,32,64,128,256");

  NasalArgs nasal_args;
  auto *c_nasal = app.add_subcommand("nasal", "LP-spectrum nasal formant analysis");
  auto *nasal_audio = c_nasal->add_option("--audio", nasal_args.audio, "Single WAV to analyze");
  auto *nasal_manifest = c_nasal->add_option(
      "--manifest", nasal_args.manifest, "Manifest; records' segments are analyzed and LT/CT compared");
  nasal_audio->excludes(nasal_manifest);
  c_nasal->add_option("--start", nasal_args.start_s, "Segment start in seconds (with --audio)")
      ->needs(nasal_audio);
  c_nasal->add_option("--end", nasal_args.end_s, "Segment end in seconds (with --audio)")
      ->needs(nasal_audio);
  c_nasal->add_option("--spectra", nasal_args.spectra,
                      "Write per-frame LP spectra as frequency/magnitude columns");

  std::string validate_manifest;
  auto *c_validate = app.add_subcommand("validate", "Check speaker disjointness and audio files");
  c_validate->add_option("--manifest", validate_manifest, "Corpus manifest (TSV)")->required();

  std::string stats_manifest;
  auto *c_stats = app.add_subcommand("stats", "Durations and speaker counts per dialect and split");
  c_stats->add_option("--manifest", stats_manifest, "Corpus manifest (TSV)")->required();

  SynthArgs synth;
  auto *c_synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
  c_synth->add_option("--out", synth.out_dir, "Directory to create")->required();
  c_synth->add_option("--kind", synth.kind, "dialect (two noise bands) or nasal (250 Hz tails)")
      ->check(CLI::IsMember({"dialect", "nasal"}));
  c_synth->add_option("--train-per-class", synth.config.train_utterances_per_class,
                      "Train utterances per dialect");
  c_synth->add_option("--test-per-class", synth.config.test_utterances_per_class,
                      "Test utterances per dialect");
  c_synth->add_option("--train-speakers", synth.config.train_speakers_per_class,
                      "Train speakers per dialect");
  c_synth->add_option("--test-speakers", synth.config.test_speakers_per_class,
                      "Test speakers per dialect");
  c_synth->add_option("--seconds", synth.config.utterance_seconds,
                      "Utterance length for --kind dialect");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (c_nasal->parsed() && nasal_args.audio.empty() && nasal_args.manifest.empty())
      throw CLI::RequiredError("nasal needs --audio or --manifest");
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "dialectid: " << e.what() << "\n"
        << "run 'dialectid --help' for usage\n";
    return kExitUsage;
  }

  Command cmd(g, out);
  try {
    int status = kExitOk;
    // A bad config file is a usage error for every subcommand, even those
    // that ignore its settings.
    if (!g.config_path.empty()) (void)cmd.LoadToolConfig();
    if (c_extract->parsed()) RunExtract(cmd, extract, g);
    else if (c_train->parsed()) RunTrain(cmd, train);
    else if (c_classify->parsed()) RunClassify(cmd, classify);
    else if (c_eval->parsed()) RunEvaluate(cmd, evaluate);
    else if (c_sweep->parsed()) RunSweep(cmd, sweep);
    else if (c_nasal->parsed()) RunNasal(cmd, nasal_args);
    else if (c_validate->parsed()) status = RunValidate(cmd, validate_manifest) ? kExitOk : kExitDataError;
    else if (c_stats->parsed()) RunStats(cmd, stats_manifest);
    else if (c_synth->parsed()) RunSynth(cmd, synth, g);
    cmd.Flush();
    return status;
  } catch (const Error &e) {
    err << "dialectid: " << e.what() << "\n";
    if (e.kind() == ErrorKind::kInvalidConfig || e.kind() == ErrorKind::kInvalidArgument ||
        (e.kind() == ErrorKind::kParseError && !g.config_path.empty() &&
         std::string(e.what()).find(g.config_path) != std::string::npos))
      return kExitUsage;
    return kExitDataError;
  } catch (const std::exception &e) {
    err << "dialectid: " << e.what() << "\n";
    return kExitDataError;
  }
}

int Run(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Run(args, std::cout, std::cerr);
}

}  // namespace dialectid::cli
