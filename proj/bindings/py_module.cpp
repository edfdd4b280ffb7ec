#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hardmono/aligner.hpp"
#include "hardmono/analysis.hpp"
#include "hardmono/checkpoint.hpp"
#include "hardmono/inference.hpp"
#include "hardmono/oracle.hpp"
#include "hardmono/svd.hpp"
#include "hardmono/trainer.hpp"
#include "hardmono/utf8.hpp"

namespace py = pybind11;
using namespace hardmono;

namespace {

using Attrs = std::map<std::string, std::string>;
using PyExample = std::tuple<std::string, Attrs, std::string>;

Corpus to_corpus(const std::vector<PyExample>& examples) {
  Corpus corpus;
  corpus.reserve(examples.size());
  for (const auto& [src, attrs, tgt] : examples) {
    corpus.push_back({utf8::decode(src), attrs, utf8::decode(tgt)});
  }
  return corpus;
}

Variant parse_variant(const std::string& name) {
  if (name == "hard") return Variant::kHard;
  if (name == "soft") return Variant::kSoft;
  throw DataError("variant must be 'hard' or 'soft', got '" + name + "'");
}

// Python-facing handle around a trained model.
struct PyModel {
  Checkpoint ckpt;

  std::string variant() const {
    return ckpt.model.config.variant == Variant::kHard ? "hard" : "soft";
  }

  std::string predict(const std::string& source, const Attrs& attributes, int max_write) {
    return utf8::encode(greedy_decode(utf8::decode(source), attributes, ckpt.model, max_write).output);
  }

  py::dict predict_detailed(const std::string& source, const Attrs& attributes, int max_write) {
    const PredictResult r = greedy_decode(utf8::decode(source), attributes, ckpt.model, max_write);
    py::dict d;
    d["output"] = utf8::encode(r.output);
    d["actions"] = serialize_actions(r.actions);
    d["pointer_trace"] = r.pointer_trace;
    d["truncated"] = r.truncated;
    d["decoder_steps"] = r.decoder_steps;
    return d;
  }

  void save(const std::string& path) const { save_checkpoint(path, ckpt); }
};

py::list metrics_to_py(const std::vector<EpochMetrics>& metrics) {
  py::list out;
  for (const auto& m : metrics) {
    py::dict d;
    d["epoch"] = m.epoch;
    d["train_loss"] = m.train_loss;
    d["train_acc"] = m.train_accuracy;
    d["dev_acc"] = m.dev_evaluated ? py::object(py::float_(m.dev_accuracy)) : py::none();
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "hard monotonic attention transducer for morphological inflection";

  py::register_exception<DataError>(m, "DataError");
  py::register_exception<ShapeError>(m, "ShapeError");
  py::register_exception<NumericError>(m, "NumericError");

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("variant", &PyModel::variant)
      .def_property_readonly("epoch", [](const PyModel& s) { return s.ckpt.epoch; })
      .def_property_readonly("dev_accuracy", [](const PyModel& s) { return s.ckpt.dev_accuracy; })
      .def("predict", &PyModel::predict, py::arg("source"), py::arg("attributes") = Attrs{},
           py::arg("max_write") = kDefaultMaxWrite)
      .def("predict_detailed", &PyModel::predict_detailed, py::arg("source"),
           py::arg("attributes") = Attrs{}, py::arg("max_write") = kDefaultMaxWrite)
      .def("save", &PyModel::save, py::arg("path"));

  m.def("load_model", [](const std::string& path) {
    PyModel s;
    s.ckpt = load_checkpoint(path);
    return s;
  }, py::arg("path"));

  m.def(
      "train",
      [](const std::vector<PyExample>& corpus, const std::vector<PyExample>& dev,
         const std::string& variant, int char_emb_dim, int attr_emb_dim, int hidden_dim,
         int num_layers, int max_epochs, int patience, std::uint64_t seed, int max_write) {
        TrainConfig config;
        config.net.variant = parse_variant(variant);
        config.net.char_emb_dim = char_emb_dim;
        config.net.attr_emb_dim = attr_emb_dim;
        config.net.hidden_dim = hidden_dim;
        config.net.num_layers = num_layers;
        config.max_epochs = max_epochs;
        config.patience = patience;
        config.seed = seed;
        config.max_write = max_write;
        const TrainResult r = train(to_corpus(corpus), to_corpus(dev), config);
        PyModel s;
        s.ckpt = r.best;
        return py::make_tuple(s, metrics_to_py(r.metrics));
      },
      py::arg("corpus"), py::arg("dev") = std::vector<PyExample>{}, py::arg("variant") = "hard",
      py::arg("char_emb_dim") = 100, py::arg("attr_emb_dim") = 20, py::arg("hidden_dim") = 100,
      py::arg("num_layers") = 2, py::arg("max_epochs") = 100, py::arg("patience") = 0,
      py::arg("seed") = 1, py::arg("max_write") = kDefaultMaxWrite);

  m.def(
      "ensemble_predict",
      [](std::vector<PyModel*> models, const std::string& source, const Attrs& attributes,
         int max_write) {
        std::vector<ModelParams*> members;
        for (PyModel* s : models) members.push_back(&s->ckpt.model);
        return utf8::encode(ensemble_predict(members, utf8::decode(source), attributes, max_write));
      },
      py::arg("models"), py::arg("source"), py::arg("attributes") = Attrs{},
      py::arg("max_write") = kDefaultMaxWrite);

  m.def(
      "align_corpus",
      [](const std::vector<std::pair<std::string, std::string>>& pairs, int iterations,
         double smoothing) {
        std::vector<std::pair<std::u32string, std::u32string>> decoded;
        decoded.reserve(pairs.size());
        for (const auto& [x, y] : pairs) decoded.emplace_back(utf8::decode(x), utf8::decode(y));
        const AlignmentModel model = train_aligner(decoded, iterations, smoothing);
        std::vector<std::string> out;
        out.reserve(decoded.size());
        for (const auto& [x, y] : decoded) out.push_back(serialize_alignment(align(x, y, model)));
        return out;
      },
      py::arg("pairs"), py::arg("iterations") = 5, py::arg("smoothing") = 0.1);

  m.def("derive_actions", [](const std::string& alignment) {
    return serialize_actions(derive_actions(parse_alignment(alignment)));
  }, py::arg("alignment"));

  m.def("execute_actions", [](const std::string& source, const std::string& actions) {
    return utf8::encode(execute_actions(utf8::decode(source), parse_actions(actions)).output);
  }, py::arg("source"), py::arg("actions"));

  m.def(
      "exact_match_accuracy",
      [](const std::vector<std::string>& predictions, const std::vector<std::string>& references) {
        std::vector<std::u32string> p, r;
        for (const auto& s : predictions) p.push_back(utf8::decode(s));
        for (const auto& s : references) r.push_back(utf8::decode(s));
        return exact_match_accuracy(p, r);
      },
      py::arg("predictions"), py::arg("references"));

  m.def(
      "svd",
      [](const std::vector<std::vector<double>>& rows) {
        if (rows.empty() || rows.front().empty()) throw DataError("svd: empty matrix");
        Mat a(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(rows.front().size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != rows.front().size()) throw DataError("svd: ragged matrix");
          for (std::size_t j = 0; j < rows[i].size(); ++j) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
          }
        }
        const SvdResult r = jacobi_svd(a);
        std::vector<double> sv(r.singular_values.data(),
                               r.singular_values.data() + r.singular_values.size());
        return sv;
      },
      py::arg("matrix"), "Singular values (descending) of a dense matrix.");
}
