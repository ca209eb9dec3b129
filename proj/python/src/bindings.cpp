#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psts/generators.hpp"
#include "psts/io.hpp"
#include "psts/packing.hpp"
#include "psts/sequencer.hpp"

namespace py = pybind11;
using namespace psts;

namespace {

/// Accepts a list of point indices or a list of labels.
Sequence to_sequence(const py::sequence& items, const TripleSystem& t) {
  std::vector<Point> entries;
  entries.reserve(py::len(items));
  for (const auto& item : items) {
    if (py::isinstance<py::str>(item)) {
      const auto label = item.cast<std::string>();
      auto p = t.find_label(label);
      if (!p) throw Error(ErrorKind::SequenceNotPermutation, "unknown point '" + label + "'");
      entries.push_back(*p);
    } else {
      entries.push_back(item.cast<Point>());
    }
  }
  return Sequence(std::move(entries), t.order());
}

std::vector<Point> to_list(const Sequence& s) { return {s.entries().begin(), s.entries().end()}; }

std::vector<std::array<Point, 3>> to_triples(std::span<const Block> blocks) {
  std::vector<std::array<Point, 3>> out;
  for (const auto& b : blocks) out.push_back(b.points);
  return out;
}

PointSet to_point_set(const std::vector<Point>& points, const TripleSystem& t) {
  PointSet s;
  for (Point p : points) {
    if (p >= t.order()) throw Error(ErrorKind::PointOutOfRange, "point " + std::to_string(p) + " out of range");
    s.insert(p);
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(_psts, m) {
  m.doc() = "Partial Steiner triple systems and admissible sequences";

  // Library errors surface as PstsError with the error kind attached.
  py::exception<Error>(m, "PstsError");
  static const std::string module_name = m.attr("__name__").cast<std::string>();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = py::module_::import(module_name.c_str()).attr("PstsError");
      py::object exc = cls(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(cls.ptr(), exc.ptr());
    }
  });

  py::class_<TripleSystem>(m, "TripleSystem")
      .def(py::init([](std::size_t n, const std::vector<RawTriple>& blocks,
                       std::vector<std::string> labels) { return validate_system(n, blocks, std::move(labels)); }),
           py::arg("order"), py::arg("blocks"), py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("order", &TripleSystem::order)
      .def_property_readonly("blocks", [](const TripleSystem& t) { return to_triples(t.blocks()); })
      .def_property_readonly("labels", &TripleSystem::labels)
      .def("index", [](const TripleSystem& t, const std::string& label) { return t.find_label(label); })
      .def("is_block", &TripleSystem::is_block)
      .def("with_isolated_points", &TripleSystem::with_isolated_points)
      .def("to_psts", [](const TripleSystem& t) { return io::write_psts(t); })
      .def("to_json", [](const TripleSystem& t) { return io::system_to_json(t).dump(); })
      .def("__len__", &TripleSystem::order)
      .def("__eq__", [](const TripleSystem& a, const TripleSystem& b) { return a == b; })
      .def("__repr__", [](const TripleSystem& t) {
        return "<TripleSystem order=" + std::to_string(t.order()) + " blocks=" +
               std::to_string(t.block_count()) + ">";
      });

  m.def("parse_system", [](const std::string& text) { return io::parse_system(text); },
        "Parse .psts text or its JSON mirror");
  m.def("read_system", &io::read_system_file, py::arg("path"));

  m.def("sts13", &gen::sts13);
  m.def("fano", &gen::fano);
  m.def("friendship", &gen::friendship, py::arg("m"));
  m.def("friendship_chain",
        [](const std::vector<std::size_t>& sizes) { return gen::friendship_chain(sizes); },
        py::arg("sizes"));
  m.def("cyclic_system",
        [](std::size_t n, const std::vector<std::array<std::size_t, 3>>& bases) {
          return gen::cyclic_system({n, bases});
        },
        py::arg("n"), py::arg("base_blocks"));
  m.def("random_system",
        [](std::size_t n, std::size_t blocks, std::uint64_t seed) {
          return gen::random_system(n, blocks, seed).system;
        },
        py::arg("n"), py::arg("blocks"), py::arg("seed") = 0);
  m.def("johnson_schonheim", &gen::johnson_schonheim, py::arg("n"));

  m.def("is_admissible",
        [](const TripleSystem& t, const py::sequence& s) { return is_admissible(to_sequence(s, t), t); },
        py::arg("system"), py::arg("sequence"));
  m.def("inadmissible_segments",
        [](const TripleSystem& t, const py::sequence& s) {
          py::list out;
          for (const auto& seg : inadmissible_segments(to_sequence(s, t), t))
            out.append(py::make_tuple(seg.segment.start, seg.segment.length,
                                      to_triples(seg.witness.parts)));
          return out;
        },
        py::arg("system"), py::arg("sequence"),
        "(start, length, partition) for every proper segment that splits into blocks");

  m.def("decide",
        [](const TripleSystem& t, std::uint64_t budget, unsigned parallel) {
          seq::DecideOptions o;
          o.budget = budget;
          o.parallel = std::max(1U, parallel);
          seq::Decision d;
          {
            py::gil_scoped_release release;
            d = seq::decide(t, o);
          }
          py::dict r;
          r["outcome"] = std::string(seq::to_string(d.outcome));
          r["witness"] = d.witness ? py::cast(to_list(*d.witness)) : py::none();
          r["nodes"] = d.budget_spent;
          r["exhausted"] = d.certificate ? d.certificate->exhausted : false;
          return r;
        },
        py::arg("system"), py::arg("budget") = seq::kDefaultBudget, py::arg("parallel") = 1);

  m.def("construct",
        [](const TripleSystem& t) {
          auto c = seq::construct_with_trace(t);
          py::dict r;
          r["sequence"] = to_list(c.sequence);
          r["method"] = c.method;
          r["nu"] = c.nu;
          r["repairs"] = c.repairs;
          return r;
        },
        py::arg("system"));

  m.def("max_disjoint_blocks",
        [](const TripleSystem& t) {
          auto p = pack::max_disjoint_blocks(t);
          return py::make_tuple(p.nu, to_triples(p.witness));
        },
        py::arg("system"), "(nu, witness blocks)");
  m.def("bad_sets",
        [](const TripleSystem& t) {
          std::vector<std::vector<Point>> out;
          for (const auto& s : pack::bad_sets(t).bad_sets) out.push_back(s.to_vector());
          return out;
        },
        py::arg("system"));
  m.def("is_good_set",
        [](const TripleSystem& t, const std::vector<Point>& points) {
          return pack::is_good_set(t, to_point_set(points, t)).good;
        },
        py::arg("system"), py::arg("points"));

  m.def("verify_sts13", [] {
    auto cert = seq::verify_sts13_certificate();
    py::list entries;
    for (const auto& e : cert.entries) {
      py::dict d;
      d["vertex"] = e.vertex;
      d["exponent"] = e.exponent;
      d["blocks"] = to_triples(e.blocks);
      entries.append(d);
    }
    return py::make_tuple(cert.every_sequence_inadmissible, entries);
  });
}
