// Python bindings: GCMs and roots are plain nested lists of ints; results
// come back as dicts shaped like the CLI's JSON.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kmroots/campaign.hpp"
#include "kmroots/io.hpp"

namespace py = pybind11;
using namespace kmroots;

namespace {

using Coeffs = std::vector<Coeff>;

py::object to_py(const io::Json& j) {
  if (j.is_null()) return py::none();
  if (j.is_boolean()) return py::bool_(j.get<bool>());
  if (j.is_number_unsigned()) return py::int_(j.get<std::uint64_t>());
  if (j.is_number_integer()) return py::int_(j.get<std::int64_t>());
  if (j.is_number_float()) return py::float_(j.get<double>());
  if (j.is_string()) return py::str(j.get<std::string>());
  if (j.is_array()) {
    py::list out;
    for (const auto& e : j) out.append(to_py(e));
    return std::move(out);
  }
  py::dict out;
  for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
  return std::move(out);
}

std::vector<RootVec> vectors(const GCM& g, const std::vector<Coeffs>& roots) {
  std::vector<RootVec> out;
  for (const auto& c : roots) {
    if (c.size() != g.rank())
      throw Error(ErrorKind::DimensionMismatch, "root of length " + std::to_string(c.size()) +
                                                    " for rank " + std::to_string(g.rank()));
    out.emplace_back(c);
  }
  return out;
}

/// Same default as the CLI: 4 (max height + 1).
Coeff default_cap(const std::vector<RootVec>& roots) {
  Coeff h = 0;
  for (const auto& v : roots) h = std::max(h, std::abs(height(v)));
  return 4 * (h + 1);
}

Coeff max_abs_height(const std::vector<RootVec>& roots) {
  Coeff h = 1;
  for (const auto& v : roots) h = std::max(h, std::abs(height(v)));
  return h;
}

py::dict real_root(const RealRoot& r) {
  py::dict d;
  d["root"] = r.root.coeffs();
  d["coroot"] = r.coroot.coeffs();
  return d;
}

}  // namespace

PYBIND11_MODULE(kmroots, m) {
  m.doc() = "Real and imaginary roots, closed sets and Levi decompositions of Kac-Moody root systems";

  // KmrootsError(ValueError) with a "kind" attribute such as "AsymmetricZero".
  py::exception<Error>(m, "KmrootsError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::module_::import("kmroots").attr("KmrootsError");
      py::object exc = type(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<GCM>(m, "GCM")
      .def_property_readonly("rank", &GCM::rank)
      .def_property_readonly("matrix", &GCM::matrix)
      .def("__repr__", [](const GCM& g) { return "GCM(" + io::to_json(g)["matrix"].dump() + ")"; });

  m.def("validate_gcm", &validate_gcm, py::arg("matrix"),
        "Checks a_ii = 2, a_ij <= 0 and a_ij = 0 iff a_ji = 0; raises KmrootsError naming the cell.");

  m.def(
      "enumerate_real_roots",
      [](const GCM& g, Coeff h) {
        py::list out;
        for (const auto& r : enumerate_real_roots(g, h)) out.append(real_root(r));
        return out;
      },
      py::arg("gcm"), py::arg("max_height"), "Real roots of |height| <= max_height with coroots.");

  m.def(
      "slice",
      [](const GCM& g, Coeff h) { return to_py(io::slice_to_json(RootSlice(g, h))); },
      py::arg("gcm"), py::arg("max_height"),
      "All roots of |height| <= max_height: {'height_bound', 'roots': [{'coeffs', 'real'}]}.");

  m.def(
      "classify_root",
      [](const GCM& g, const Coeffs& v) {
        const RootClass c = classify_root(g, vectors(g, {v})[0]);
        switch (c.kind) {
          case RootClass::Kind::Real: return std::string("real");
          case RootClass::Kind::Imaginary: return std::string("imaginary");
          case RootClass::Kind::NotRoot: break;
        }
        return std::string("not a root");
      },
      py::arg("gcm"), py::arg("vector"));

  m.def(
      "closure",
      [](const GCM& g, const std::vector<Coeffs>& roots, std::optional<Coeff> cap) {
        const auto v = vectors(g, roots);
        const Coeff c = cap.value_or(default_cap(v));
        const RootSlice s(g, 2 * c, SliceMode::Lazy);
        return to_py(io::to_json(closure(RootSet::from_vectors(s, v), s, c)));
      },
      py::arg("gcm"), py::arg("roots"), py::arg("cap") = py::none(),
      "Saturates a set of real roots under root sums: {'status', 'cap', 'roots', 'witness'}.");

  m.def(
      "is_closed",
      [](const GCM& g, const std::vector<Coeffs>& roots) -> py::object {
        const auto v = vectors(g, roots);
        const RootSlice s(g, 2 * max_abs_height(v), SliceMode::Lazy);
        const auto w = is_closed(RootSet::from_vectors(s, v), s);
        if (!w) return py::none();
        return to_py(io::to_json(*w));
      },
      py::arg("gcm"), py::arg("roots"), "None when closed, else a witness {'a', 'b', 'sum'}.");

  m.def(
      "set_prenilpotent",
      [](const GCM& g, const std::vector<Coeffs>& roots, std::optional<Coeff> cap) {
        const auto v = vectors(g, roots);
        const Coeff c = cap.value_or(default_cap(v));
        const RootSlice s(g, 2 * c, SliceMode::Lazy);
        const Prenilpotency p = set_prenilpotent(RootSet::from_vectors(s, v), s, c);
        py::dict d;
        d["verdict"] = to_string(p.verdict);
        d["closure"] = to_py(io::to_json(p.closure));
        d["imaginary_witness"] =
            p.imaginary_witness ? to_py(io::to_json(*p.imaginary_witness)) : py::none();
        d["symmetric_witness"] =
            p.symmetric_witness ? to_py(io::to_json(p.symmetric_witness->root)) : py::none();
        return d;
      },
      py::arg("gcm"), py::arg("roots"), py::arg("cap") = py::none());

  m.def(
      "pair_relation",
      [](const GCM& g, const Coeffs& a, const Coeffs& b) {
        const auto v = vectors(g, {a, b});
        const RootSlice s(g, max_abs_height(v), SliceMode::Lazy);
        const RootSet pair = RootSet::from_vectors(s, {v[0]});
        const RootSet other = RootSet::from_vectors(s, {v[1]});
        const PairClass pc = pair_relation(pair[0], other[0], g);
        py::dict d;
        d["kind"] = to_string(pc.kind);
        d["type"] = pc.type ? py::object(py::str(to_string(*pc.type))) : py::none();
        d["m"] = pc.m;
        d["n"] = pc.n;
        return d;
      },
      py::arg("gcm"), py::arg("alpha"), py::arg("beta"));

  m.def(
      "chamber_in_intersection",
      [](const GCM& g, const std::vector<Coeffs>& phi, const std::vector<Coeffs>& psi,
         std::size_t radius) {
        const auto pv = vectors(g, phi);
        const RootSlice s(g, 2 * max_abs_height(pv), SliceMode::Lazy);
        const WeylBall ball(g, radius);
        const IntersectionResult r = chamber_in_intersection(
            RootSet::from_vectors(s, pv), RootSet::from_vectors(s, vectors(g, psi)), ball, s);
        py::dict d;
        d["found"] = r.status == IntersectionResult::Status::Found;
        d["word"] = r.chamber ? py::object(py::cast(r.chamber->elt.word())) : py::none();
        d["translations"] = r.translations;
        d["cap_hit"] = r.cap_hit;
        return d;
      },
      py::arg("gcm"), py::arg("phi"), py::arg("psi"), py::arg("radius") = 10,
      "A chamber (as a reduced word) in every H(phi), phi in Phi above some psi in Psi.");

  m.def(
      "is_nilpotent",
      [](const GCM& g, const std::vector<Coeffs>& roots) {
        const auto v = vectors(g, roots);
        const RootSlice s(g, 2 * max_abs_height(v), SliceMode::Lazy);
        const NilpotencyCheck c = is_nilpotent(RootSet::from_vectors(s, v), s);
        py::dict d;
        d["nilpotent"] = c.nilpotent;
        d["violated"] = to_string(c.violated);
        return d;
      },
      py::arg("gcm"), py::arg("roots"));

  m.def(
      "verify_levi",
      [](const GCM& g, const std::vector<Coeffs>& roots, std::optional<Coeff> cap) {
        const auto v = vectors(g, roots);
        const Coeff depth = std::max(cap.value_or(default_cap(v)), 2 * max_abs_height(v));
        const RootSlice s(g, depth, SliceMode::Lazy);
        return to_py(io::to_json(verify_levi(RootSet::from_vectors(s, v), s)));
      },
      py::arg("gcm"), py::arg("roots"), py::arg("cap") = py::none(),
      "Levi decomposition report: {'psi_s', 'psi_n', 'type', 'coroot_rank', 'checks', 'passed'}.");

  m.def(
      "cartan_type",
      [](const GCM& g, const std::vector<Coeffs>& roots) {
        const auto v = vectors(g, roots);
        const RootSlice s(g, 2 * max_abs_height(v), SliceMode::Lazy);
        return cartan_type(RootSet::from_vectors(s, v), s).to_string();
      },
      py::arg("gcm"), py::arg("roots"), "Finite type of a closed symmetric set, e.g. 'A1xB2'.");

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, std::size_t cases, std::size_t threads) {
        campaign::CampaignConfig c;
        auto s = campaign::parse_suite(suite);
        if (!s) throw Error(ErrorKind::InvalidInput, "unknown suite " + suite);
        c.suite = *s;
        c.seed = seed;
        c.cases = cases;
        c.threads = threads;
        campaign::Report rep;
        {
          py::gil_scoped_release release;
          rep = campaign::run(c);
        }
        return to_py(campaign::to_json(rep));
      },
      py::arg("suite"), py::arg("seed") = 0, py::arg("cases") = 100, py::arg("threads") = 1,
      "Runs a seeded verification campaign and returns its report.");
}
