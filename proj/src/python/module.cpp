#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "activemix/action_grid.hpp"
#include "activemix/dynamics.hpp"
#include "activemix/environment.hpp"
#include "activemix/errors.hpp"
#include "activemix/policies.hpp"
#include "activemix/runner.hpp"
#include "activemix/spectral.hpp"

namespace py = pybind11;
using namespace activemix;

namespace {

py::array_t<int> obs_to_array(const ObservationTensor& obs) {
  const auto ng = static_cast<py::ssize_t>(obs.n_grid());
  py::array_t<int> out({py::ssize_t{2}, ng, ng});
  std::copy(obs.flat().begin(), obs.flat().end(), out.mutable_data());
  return out;
}

ObservationTensor array_to_obs(const py::array_t<int, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 3 || a.shape(0) != 2 || a.shape(1) != a.shape(2)) {
    throw py::value_error("observation must have shape (2, Ng, Ng)");
  }
  ObservationTensor obs(static_cast<int>(a.shape(1)));
  auto r = a.unchecked<3>();
  for (py::ssize_t tag = 0; tag < 2; ++tag) {
    for (py::ssize_t ix = 0; ix < a.shape(1); ++ix) {
      for (py::ssize_t iy = 0; iy < a.shape(2); ++iy) {
        obs.at(static_cast<Tag>(tag), static_cast<int>(ix), static_cast<int>(iy)) = r(tag, ix, iy);
      }
    }
  }
  return obs;
}

SymmetricMatrix array_to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw py::value_error("matrix must be square");
  const auto n = static_cast<std::size_t>(a.shape(0));
  SymmetricMatrix m(n);
  auto r = a.unchecked<2>();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = r(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
  }
  return m;
}

py::array_t<double> matrix_to_array(const SymmetricMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.size());
  py::array_t<double> out({n, n});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i) {
    for (py::ssize_t j = 0; j < n; ++j) w(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return out;
}

ActionGrid digits_to_grid(int n_grid, const std::vector<int>& digits) {
  return ActionGrid::from_digits(n_grid, digits);
}

}  // namespace

PYBIND11_MODULE(_activemix, m) {
  m.doc() = "Controllable-interaction active-matter mixing environment and spectral analysis";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidAction>(m, "InvalidAction", PyExc_ValueError);
  py::register_exception<InvalidPolicy>(m, "InvalidPolicy", PyExc_ValueError);
  py::register_exception<EpisodeFinished>(m, "EpisodeFinished", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<InteractionSet>(m, "InteractionSet")
      .value("ATTRACTIVE_ONLY", InteractionSet::AttractiveOnly)
      .value("REPULSIVE_ONLY", InteractionSet::RepulsiveOnly)
      .value("BOTH", InteractionSet::Both);

  py::class_<SimParams>(m, "SimParams")
      .def(py::init<>())
      .def_readwrite("dt", &SimParams::dt)
      .def_readwrite("spring_k", &SimParams::spring_k)
      .def_readwrite("lower_cutoff", &SimParams::lower_cutoff)
      .def_readwrite("upper_cutoff", &SimParams::upper_cutoff)
      .def_readwrite("decay_rate", &SimParams::decay_rate)
      .def_readwrite("mass", &SimParams::mass)
      .def_readwrite("half_width", &SimParams::half_width)
      .def_readwrite("n_particles", &SimParams::n_particles)
      .def_readwrite("n_grid", &SimParams::n_grid)
      .def_readwrite("n_steps", &SimParams::n_steps)
      .def_readwrite("interactions", &SimParams::interactions)
      .def_readwrite("mobility", &SimParams::mobility)
      .def("validate", &SimParams::validate)
      .def("deactivation_probability", &SimParams::deactivation_probability);

  py::class_<EnvOptions>(m, "EnvOptions")
      .def(py::init<>())
      .def_readwrite("alpha", &EnvOptions::alpha)
      .def_readwrite("frame_skip", &EnvOptions::frame_skip)
      .def_readwrite("use_cell_list", &EnvOptions::use_cell_list);

  py::class_<MixingEnv>(m, "MixingEnv")
      .def(py::init<SimParams, EnvOptions>(), py::arg("params") = SimParams{},
           py::arg("options") = EnvOptions{})
      .def("reset", [](MixingEnv& env, std::uint64_t seed) { return obs_to_array(env.reset(seed)); },
           py::arg("seed"))
      .def(
          "step",
          [](MixingEnv& env, const std::vector<int>& action) {
            const StepResult r = env.step(digits_to_grid(env.params().n_grid, action));
            py::dict info;
            info["r_m"] = r.r_m;
            info["r_h"] = r.r_h;
            info["t"] = r.t;
            return py::make_tuple(obs_to_array(r.observation), r.reward, r.done, info);
          },
          py::arg("action"), "Returns (observation, reward, done, info).")
      .def_property_readonly("t", &MixingEnv::t)
      .def_property_readonly("done", &MixingEnv::done)
      .def("positions", [](const MixingEnv& env) {
        const auto& pos = env.state().positions;
        py::array_t<double> out({static_cast<py::ssize_t>(pos.size()), py::ssize_t{2}});
        auto w = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < pos.size(); ++i) {
          w(static_cast<py::ssize_t>(i), 0) = pos[i].x;
          w(static_cast<py::ssize_t>(i), 1) = pos[i].y;
        }
        return out;
      })
      .def("update_matrix", [](const MixingEnv& env) {
        return matrix_to_array(build_update_matrix(env.state(), env.params()).entries);
      });

  m.def("mixing_reward",
        [](const py::array_t<int, py::array::c_style | py::array::forcecast>& obs,
           const SimParams& p) { return mixing_reward(array_to_obs(obs), p); },
        py::arg("obs"), py::arg("params") = SimParams{});
  m.def("homogeneity_reward",
        [](const py::array_t<int, py::array::c_style | py::array::forcecast>& obs,
           const SimParams& p) { return homogeneity_reward(array_to_obs(obs), p); },
        py::arg("obs"), py::arg("params") = SimParams{});
  m.def("combined_reward", &combined_reward, py::arg("r_m"), py::arg("r_h"), py::arg("alpha"));

  m.def("encode_action",
        [](std::uint64_t index, int n_grid) { return encode_action(index, n_grid).digits(); },
        py::arg("index"), py::arg("n_grid") = 4);
  m.def("decode_action",
        [](const std::vector<int>& digits, int n_grid) {
          return decode_action(digits_to_grid(n_grid, digits));
        },
        py::arg("digits"), py::arg("n_grid") = 4);

  m.def("pair_coefficient",
        [](double dist, bool attractive, const SimParams& p) {
          return pair_coefficient(dist, attractive ? InteractionMode::Attractive : InteractionMode::Repulsive, p);
        },
        py::arg("distance"), py::arg("attractive"), py::arg("params") = SimParams{});
  m.def("minimum_image_displacement",
        [](std::pair<double, double> a, std::pair<double, double> b, double L) {
          const Vec2 d = minimum_image_displacement({a.first, a.second}, {b.first, b.second}, L);
          return std::make_pair(d.x, d.y);
        },
        py::arg("xi"), py::arg("xj"), py::arg("half_width") = 2.0);

  m.def("symmetric_eigenvalues",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
          return symmetric_eigenvalues(array_to_matrix(a));
        });
  m.def("gershgorin_bounds",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
          const auto b = gershgorin_bounds(array_to_matrix(a));
          return std::make_pair(b.lo, b.hi);
        });
  m.def("log_determinant", [](const std::vector<double>& eig) {
    const LogDet d = log_determinant(eig);
    return py::make_tuple(d.value, d.finite);
  });

  m.def("policy_action",
        [](const std::string& kind, const py::array_t<int, py::array::c_style | py::array::forcecast>& obs,
           int t, int period, double duty) {
          PolicySpec spec;
          spec.kind = parse_policy_kind(kind);
          spec.period = period;
          spec.duty = duty;
          const ObservationTensor o = array_to_obs(obs);
          spec.validate(InteractionSet::Both, o.n_grid());
          return policy_action(spec, o, t).digits();
        },
        py::arg("kind"), py::arg("obs"), py::arg("t"), py::arg("period") = 10, py::arg("duty") = 0.5);
}
