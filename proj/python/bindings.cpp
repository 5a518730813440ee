#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "monotile/pipeline.hpp"
#include "monotile/render.hpp"

namespace py = pybind11;
using namespace monotile;

namespace {

py::handle error_class;

// Structured results cross the boundary as plain dicts/lists.
Json to_json(py::handle obj) {
  auto dumps = py::module_::import("json").attr("dumps");
  return Json::parse(dumps(obj, py::arg("default") = py::module_::import("builtins").attr("str")).cast<std::string>());
}

py::object to_py(Json const& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::object to_py(Fraction const& q) {
  return py::module_::import("fractions").attr("Fraction")(to_string(q));
}

py::object to_py(Integer const& z) {
  return py::int_(py::str(z.get_str()));
}

Fraction to_fraction(py::handle obj) {
  return parse_fraction(py::str(obj).cast<std::string>());
}

py::list strs(FiniteSubset const& F) {
  py::list out;
  for (auto const& e : F) {
    out.append(e.str());
  }
  return out;
}

py::list rows_of(ManagedMatrix const& M) {
  py::list out;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < M.cols(); ++j) {
      row.append(to_py(M(i, j)));
    }
    out.append(row);
  }
  return out;
}

// A dict in the file format, or a list of rows whose ratio is read off
// the first column.
ManagedMatrix to_matrix(py::handle obj) {
  if (py::isinstance<py::dict>(obj)) {
    return matrix_from_json(to_json(obj));
  }
  auto rows = to_json(obj);
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw Error(ErrorCode::domain, "a matrix is a dict or a non-empty list of rows");
  }
  Json    entries = Json::array();
  Integer ratio(0);
  for (auto const& r : rows) {
    if (r.size() != rows[0].size()) {
      throw Error(ErrorCode::dimension_mismatch, "ragged rows");
    }
    ratio += integer_from_json(r[0]);
    for (auto const& x : r) {
      entries.push_back(x);
    }
  }
  return matrix_from_json(Json{{"rows", rows.size()}, {"cols", rows[0].size()},
                               {"ratio", integer_to_json(ratio)}, {"entries", entries}});
}

std::vector<ManagedMatrix> to_matrices(py::handle obj) {
  std::vector<ManagedMatrix> out;
  for (auto m : obj) {
    out.push_back(to_matrix(m));
  }
  return out;
}

ManagedSequence to_sequence(py::handle obj) {
  auto seq = ManagedSequence::from_matrices(to_matrices(obj));
  seq.check();
  return seq;
}

Element elem(GroupContext const& ctx, std::string const& s) {
  return parse_element(ctx, s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact constructions of congruent Folner ladders, block hierarchies and their measures";

  // Instances carry the error kind as `.code`, e.g. "infeasible".
  error_class = py::exception<Error>(m, "MonotileError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (Error const& e) {
      auto inst = py::reinterpret_borrow<py::object>(error_class)(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_class.ptr(), inst.ptr());
    } catch (nlohmann::json::exception const& e) {
      auto inst = py::reinterpret_borrow<py::object>(error_class)(std::string("config error: ") + e.what());
      inst.attr("code") = "config";
      PyErr_SetObject(error_class.ptr(), inst.ptr());
    }
  });

  py::class_<GroupContext>(m, "Group")
      .def_static("lattice", &GroupContext::lattice, py::arg("d"))
      .def_static("cyclic", &GroupContext::cyclic, py::arg("n"))
      .def_static("heisenberg3", &GroupContext::heisenberg3)
      .def_static("pruefer", &GroupContext::pruefer, py::arg("p"))
      .def_static("rationals", &GroupContext::rationals)
      .def_static("trivial", &GroupContext::trivial)
      .def_static("direct_product", &GroupContext::direct_product, py::arg("factors"))
      .def_static("from_dict", [](py::dict d) { return group_from_json(to_json(d)); })
      .def("to_dict", [](GroupContext const& g) { return to_py(group_to_json(g)); })
      .def("identity", [](GroupContext const& g) { return g.identity().str(); })
      .def("product", [](GroupContext const& g, std::string const& a, std::string const& b) {
        return g.product(elem(g, a), elem(g, b)).str();
      })
      .def("inverse", [](GroupContext const& g, std::string const& a) { return g.inverse(elem(g, a)).str(); })
      .def("generators", [](GroupContext const& g) {
        py::list out;
        for (auto const& e : g.generators()) {
          out.append(e.str());
        }
        return out;
      })
      .def("__contains__", [](GroupContext const& g, std::string const& a) {
        try {
          return g.is_valid(parse_element(g, a));
        } catch (Error const&) {
          return false;
        }
      })
      .def("__repr__", [](GroupContext const& g) { return "Group(" + group_to_json(g).dump() + ")"; });

  py::class_<FolnerLadder>(m, "Ladder")
      .def_property_readonly("group", [](FolnerLadder const& L) { return L.ctx; })
      .def_property_readonly("depth", &FolnerLadder::depth)
      .def_property_readonly("levels", [](FolnerLadder const& L) {
        py::list out;
        for (auto const& F : L.levels) {
          out.append(strs(F));
        }
        return out;
      })
      .def_property_readonly("glue", [](FolnerLadder const& L) {
        py::list out;
        for (auto const& J : L.glue) {
          out.append(strs(J));
        }
        return out;
      })
      .def_property_readonly("sizes", [](FolnerLadder const& L) {
        std::vector<std::size_t> s;
        for (auto const& F : L.levels) {
          s.push_back(F.size());
        }
        return s;
      })
      .def("check_congruent", [](FolnerLadder const& L) { return to_py(congruence_to_json(check_congruent(L))); })
      .def("folner_defect", [](FolnerLadder const& L, std::size_t n, std::string const& g) {
        return to_py(folner_defect(L.ctx, L.levels.at(n), elem(L.ctx, g)));
      }, py::arg("level"), py::arg("g"))
      .def("boundary_mass", [](FolnerLadder const& L, std::string const& g, std::size_t n) {
        return to_py(boundary_mass_bound(L, elem(L.ctx, g), n));
      }, py::arg("g"), py::arg("level"))
      .def("regroup", &regroup_ladder, py::arg("indices"))
      .def("to_dict", [](FolnerLadder const& L) { return to_py(ladder_to_json(L)); })
      .def_static("from_dict", [](py::dict d) { return ladder_from_json(to_json(d)); });

  m.def("build_ladder", [](py::object group, std::size_t depth, std::string const& route, std::int64_t base) {
    PipelineConfig c;
    c.group        = py::isinstance<GroupContext>(group) ? group_to_json(group.cast<GroupContext>()) : to_json(group);
    c.depth        = depth;
    c.ladder_route = route;
    c.base         = base;
    return build_configured_ladder(group_from_json(c.group), c);
  }, py::arg("group"), py::arg("depth") = 4, py::arg("route") = "auto", py::arg("base") = 3,
     "Ladder for a Group or a group dict; route is auto|lattice|pruefer|chain|heisenberg|virtual");
  m.def("lattice_ladder", &build_lattice_ladder, py::arg("d"), py::arg("depth"), py::arg("base") = 3);
  m.def("pruefer_ladder", &build_pruefer_ladder, py::arg("p"), py::arg("depth"));

  py::class_<BlockHierarchy>(m, "Hierarchy")
      .def_property_readonly("depth", &BlockHierarchy::depth)
      .def_property_readonly("ladder", [](BlockHierarchy const& h) { return h.ladder; })
      .def_property_readonly("matrices", [](BlockHierarchy const& h) {
        py::list out;
        for (auto const& M : h.matrices) {
          out.append(rows_of(M));
        }
        return out;
      })
      .def("check_structure", &check_structure)
      .def("verify_c3", [](BlockHierarchy const& h, std::size_t n) {
        return to_py(c3_to_json(verify_C3(h.ladder.ctx, h.families.at(n), h.ladder.levels.at(n))));
      }, py::arg("level"))
      .def("x0", [](BlockHierarchy const& h, std::size_t n, std::string const& render) -> py::object {
        auto const& p = x0_patch(h, n);
        if (render == "text") {
          return py::str(render_pattern(h.ladder.ctx, p, RenderMode::text));
        }
        return to_py(pattern_to_json(p));
      }, py::arg("level"), py::arg("render") = "json")
      .def("return_times", [](BlockHierarchy const& h, std::size_t n, std::size_t k) {
        return strs(return_times(h, n, k));
      }, py::arg("n"), py::arg("m"))
      .def("scan_occurrences", [](BlockHierarchy const& h, std::size_t n, std::size_t k) {
        return strs(scan_occurrences(h, n, k));
      }, py::arg("n"), py::arg("m"))
      .def("check_partitions", [](BlockHierarchy const& h, std::size_t n, std::size_t k) {
        return to_py(partition_to_json(check_partitions(h, n, k)));
      }, py::arg("n"), py::arg("m"))
      .def("syndeticity", [](BlockHierarchy const& h, std::size_t n, std::size_t k) {
        return to_py(syndeticity_to_json(syndeticity_window(h, n, k)));
      }, py::arg("n"), py::arg("m"))
      .def("incidence", [](BlockHierarchy const& h, std::size_t n) { return rows_of(incidence_from_hierarchy(h, n)); },
           py::arg("level"))
      .def("to_dict", [](BlockHierarchy const& h) { return to_py(hierarchy_to_json(h)); })
      .def_static("from_dict", [](py::dict d) { return hierarchy_from_json(to_json(d)); });

  m.def("build_hierarchy", [](FolnerLadder const& L, py::object matrices) {
    return build_hierarchy(L, matrices.is_none() ? default_matrices(L) : to_matrices(matrices));
  }, py::arg("ladder"), py::arg("matrices") = py::none(),
     "Augmented count matrices as lists of rows; the shipped defaults when omitted");
  m.def("augment_matrix", [](py::object M) { return rows_of(augment_matrix(to_matrix(M))); });

  m.def("push", [](py::object M, std::vector<py::object> coords, py::object scale) {
    SimplexPoint z;
    for (auto const& c : coords) {
      z.coords.push_back(to_fraction(c));
    }
    z.scale = Integer(py::str(scale).cast<std::string>());
    auto y  = push(to_matrix(M), z);
    py::list out;
    for (auto const& c : y.coords) {
      out.append(to_py(c));
    }
    return py::make_tuple(out, to_py(y.scale));
  }, py::arg("matrix"), py::arg("coords"), py::arg("scale"));
  m.def("approximate_limit", [](py::object ms, std::size_t n, std::size_t d) {
    return to_py(approximant_to_json(approximate_limit(to_sequence(ms), n, d)));
  }, py::arg("matrices"), py::arg("n"), py::arg("d"));
  m.def("nesting_holds", [](py::object ms, std::size_t n, std::size_t d) {
    return nesting_certificate(to_sequence(ms), n, d).holds;
  }, py::arg("matrices"), py::arg("n"), py::arg("d"));
  m.def("select_subsequence", [](py::object ms, py::object K) {
    auto sel = select_subsequence_lemma8(to_sequence(ms), to_fraction(K));
    py::dict out;
    out["indices"]     = sel.indices;
    out["tail"]        = sel.tail;
    out["certificate"] = lemma8_certificate(sel);
    py::list grouped;
    for (auto const& G : sel.grouped) {
      grouped.append(rows_of(G));
    }
    out["grouped"] = grouped;
    return out;
  }, py::arg("matrices"), py::arg("K") = 1);
  m.def("realize_finite_simplex", [](std::size_t d, py::object ratio, py::object tol, std::size_t max_depth) {
    auto r = realize_finite_simplex(d, {Integer(py::str(ratio).cast<std::string>())}, true, to_fraction(tol),
                                    max_depth);
    py::dict out;
    out["depth"] = r.depth;
    py::list ms, diam;
    for (auto const& M : r.sequence.matrices) {
      ms.append(rows_of(M));
    }
    for (auto const& x : r.diameters) {
      diam.append(to_py(x));
    }
    out["matrices"]    = ms;
    out["diameters"]   = diam;
    out["approximant"] = to_py(approximant_to_json(r.approximant));
    return out;
  }, py::arg("d"), py::arg("ratio"), py::arg("tol"), py::arg("max_depth") = 64);

  m.def("run_pipeline", [](py::dict config, std::string const& base_dir, bool write) {
    auto c = PipelineConfig::from_json(to_json(config), base_dir);
    c.validate();
    return to_py(run_pipeline(c, write).to_json());
  }, py::arg("config"), py::arg("base_dir") = ".", py::arg("write") = false,
     "Runs every stage; returns the report dict (no files unless write=True)");
}
