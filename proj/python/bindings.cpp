// SPDX-License-Identifier: Apache-2.0
#include "airybeam/channels.hpp"
#include "airybeam/config.hpp"
#include "airybeam/errors.hpp"
#include "airybeam/experiments.hpp"
#include "airybeam/presets.hpp"
#include "airybeam/propagation.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace airybeam;

namespace
{
    CodebookStrategy make_strategy(const std::string &name, double bending, double focal, double angle_offset)
    {
        if (name == "trad_all")
            return strategy::TradAll{};
        if (name == "airy_geo")
            return strategy::AiryGeo{bending, focal};
        if (name == "mixed")
            return strategy::Mixed{bending, focal, angle_offset};
        throw ArgumentError("strategy must be trad_all, airy_geo or mixed");
    }

    py::dict metrics_dict(const MetricsRecord &m)
    {
        py::dict d;
        d["condition_number"] = m.condition_number;
        d["singular_values"] = m.singular_values;
        d["alpha_power"] = m.alpha_power;
        d["common_sinr_db"] = m.common_sinr_db;
        d["sum_rate"] = m.sum_rate;
        d["coupling_db"] = m.coupling_db;
        d["user_sinr_db"] = m.user_sinr_db;
        d["zf_residual"] = m.zf_residual;
        d["transmit_power"] = m.transmit_power;
        d["equalized"] = m.equalized;
        d["singular"] = m.singular;
        return d;
    }

    // Column arrays keyed by "<strategy>.<metric>" plus the sweep variable and extras
    py::dict sweep_dict(const SweepResult &r)
    {
        py::dict d;
        std::vector<double> values;
        for (const auto &p : r.points)
            values.push_back(p.value);
        d[py::str(r.variable)] = py::array_t<double>(values.size(), values.data());
        for (std::size_t j = 0; j < r.strategies.size(); ++j)
        {
            std::vector<double> kappa, sinr, rate, alpha;
            for (const auto &p : r.points)
            {
                kappa.push_back(p.records[j].condition_number);
                sinr.push_back(p.records[j].common_sinr_db);
                rate.push_back(p.records[j].sum_rate);
                alpha.push_back(p.records[j].alpha_power);
            }
            const std::string s = r.strategies[j];
            d[py::str(s + ".kappa")] = py::array_t<double>(kappa.size(), kappa.data());
            d[py::str(s + ".sinr_db")] = py::array_t<double>(sinr.size(), sinr.data());
            d[py::str(s + ".sum_rate")] = py::array_t<double>(rate.size(), rate.data());
            d[py::str(s + ".alpha_power")] = py::array_t<double>(alpha.size(), alpha.data());
        }
        for (std::size_t e = 0; e < r.extra_columns.size(); ++e)
        {
            std::vector<double> col;
            for (const auto &p : r.points)
                col.push_back(p.extras[e]);
            d[py::str(r.extra_columns[e])] = py::array_t<double>(col.size(), col.data());
        }
        d["invariants_ok"] = r.invariants.ok();
        return d;
    }

    ComplexField field_from(py::array_t<cplx, py::array::c_style | py::array::forcecast> samples, double window,
                            double apodization, double wavelength, double depth)
    {
        const GridSpec grid(static_cast<std::size_t>(samples.size()), window, apodization);
        std::vector<cplx> data(samples.data(), samples.data() + samples.size());
        return {std::move(data), grid, depth, wavelength};
    }

    py::array_t<cplx> to_array(const std::vector<cplx> &v)
    {
        return py::array_t<cplx>(v.size(), v.data());
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Near-field Airy beamforming simulator core";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ModelMismatchError>(m, "ModelMismatchError", PyExc_RuntimeError);
    py::register_exception<DepthMismatchError>(m, "DepthMismatchError", PyExc_RuntimeError);
    py::register_exception<SingularChannelError>(m, "SingularChannelError", PyExc_ArithmeticError);
    py::register_exception<InfeasibleSearchError>(m, "InfeasibleSearchError", PyExc_RuntimeError);

    m.attr("speed_of_light") = kSpeedOfLight;

    py::class_<UserPosition>(m, "UserPosition")
        .def(py::init([](double x, double z, std::string label) { return UserPosition{x, z, std::move(label)}; }),
             py::arg("x"), py::arg("z"), py::arg("label") = "")
        .def_readwrite("x", &UserPosition::x)
        .def_readwrite("z", &UserPosition::z)
        .def_readwrite("label", &UserPosition::label)
        .def("__repr__", [](const UserPosition &u) {
            return "UserPosition(x=" + std::to_string(u.x) + ", z=" + std::to_string(u.z) + ", label='" + u.label + "')";
        });

    py::class_<KnifeEdgeObstacle>(m, "KnifeEdgeObstacle")
        .def(py::init([](double depth, double edge_x, bool block_below) {
                 return KnifeEdgeObstacle{depth, edge_x, block_below ? BlockedSide::below_edge : BlockedSide::above_edge};
             }),
             py::arg("depth"), py::arg("edge_x") = 0.0, py::arg("block_below") = true)
        .def_readwrite("depth", &KnifeEdgeObstacle::depth)
        .def_readwrite("edge_x", &KnifeEdgeObstacle::edge_x)
        .def("blocks", &KnifeEdgeObstacle::blocks);

    py::class_<ScenarioConfig>(m, "Scenario")
        .def_property_readonly("frequency", [](const ScenarioConfig &s) { return s.carrier.frequency(); })
        .def_property_readonly("wavelength", [](const ScenarioConfig &s) { return s.carrier.wavelength(); })
        .def_property_readonly("num_elements", [](const ScenarioConfig &s) { return s.array.num_elements(); })
        .def_property_readonly("element_x", [](const ScenarioConfig &s) {
            auto xs = s.array.element_x();
            return py::array_t<double>(xs.size(), xs.data());
        })
        .def_property("users", [](const ScenarioConfig &s) { return s.users; },
                      [](ScenarioConfig &s, std::vector<UserPosition> users) { s.users = std::move(users); })
        .def_property("obstacle", [](const ScenarioConfig &s) { return s.obstacle; },
                      [](ScenarioConfig &s, std::optional<KnifeEdgeObstacle> o) { s.obstacle = o; })
        .def_readwrite("noise_power", &ScenarioConfig::noise_power)
        .def_readwrite("tx_power", &ScenarioConfig::tx_power)
        .def_readwrite("rzf_epsilon", &ScenarioConfig::rzf_epsilon)
        .def_property_readonly("grid_size", [](const ScenarioConfig &s) { return s.grid.num_samples(); })
        .def_property_readonly("window_width", [](const ScenarioConfig &s) { return s.grid.window_width(); })
        .def("set_grid", [](ScenarioConfig &s, std::size_t nx, double window, double apodization) {
            s.grid = GridSpec(nx, window, apodization);
        }, py::arg("nx"), py::arg("window_width"), py::arg("apodization_width"))
        .def("validate", &ScenarioConfig::validate)
        .def("warnings", &ScenarioConfig::warnings)
        .def("hash", &ScenarioConfig::hash)
        .def("to_config_text", [](const ScenarioConfig &s) { return to_config_text(s); })
        .def("lam", [](const ScenarioConfig &s, double multiples) { return s.carrier.lambda(multiples); });

    m.def("preset", &presets::by_name, py::arg("name"), "Built-in scenario: baseline, shadow or mixed");
    m.def("load_config", [](const std::filesystem::path &p) { return load_config(p); }, py::arg("path"));
    m.def("parse_config", [](const std::string &text) { return parse_config(text); }, py::arg("text"));

    m.def("fraunhofer_distance", [](const ScenarioConfig &s) { return fraunhofer_distance(s.array, s.carrier); });
    m.def("geometric_angle", &geometric_angle, py::arg("user"));
    m.def("is_shadowed", [](const ScenarioConfig &s, std::size_t k) {
        if (!s.obstacle)
            return false;
        return classify_user(s.users.at(k), *s.obstacle, s.array) == Illumination::shadowed;
    }, py::arg("scenario"), py::arg("user"));

    m.def("traditional_focus", [](const ScenarioConfig &s, const UserPosition &u) {
        return Eigen::VectorXcd(traditional_focus(s.array, s.carrier, u).weights);
    }, py::arg("scenario"), py::arg("target"));
    m.def("airy_weights", [](const ScenarioConfig &s, double bending, double focal, double theta) {
        return Eigen::VectorXcd(airy_weights(s.array, s.carrier, {bending, focal, theta}).weights);
    }, py::arg("scenario"), py::arg("bending"), py::arg("focal"), py::arg("launch_angle"));
    m.def("build_codebook", [](const ScenarioConfig &s, const std::string &name, double bending, double focal,
                               double offset) {
        return Eigen::MatrixXcd(build_codebook(s, make_strategy(name, bending, focal, offset)).weights);
    }, py::arg("scenario"), py::arg("strategy") = "trad_all", py::arg("bending") = -25.0, py::arg("focal") = 1.75,
       py::arg("angle_offset") = 0.0);

    m.def("greens_channel", [](const ScenarioConfig &s) { return Eigen::MatrixXcd(greens_channel(s).entries); });
    m.def("effective_channel_diffraction", [](const ScenarioConfig &s, const Eigen::MatrixXcd &w) {
        return Eigen::MatrixXcd(effective_channel_diffraction(s, w).entries);
    }, py::arg("scenario"), py::arg("beams"));
    m.def("calibrate_models", [](const ScenarioConfig &s) {
        const auto fit = calibrate_models(s);
        return py::make_tuple(fit.scale, fit.residual);
    }, "Returns (c, residual) with greens ~= c * diffraction");

    m.def("rzf_precoder", [](const Eigen::MatrixXcd &h, const Eigen::MatrixXcd &w, double power, double eps) {
        const auto r = rzf_precoder({h, ChannelModel::fresnel_diffraction, ChannelKind::effective}, w, power, eps);
        py::dict d;
        d["baseband"] = r.baseband;
        d["alpha"] = r.alpha;
        d["product"] = r.product;
        d["transmit_power"] = r.transmit_power;
        return d;
    }, py::arg("channel"), py::arg("beams"), py::arg("tx_power") = 1.0, py::arg("epsilon") = 0.0);
    m.def("link_metrics", [](const Eigen::MatrixXcd &h, const Eigen::MatrixXcd &w, double power, double eps,
                             double noise) {
        const ChannelMatrix c{h, ChannelModel::fresnel_diffraction, ChannelKind::effective};
        return metrics_dict(link_metrics(c, rzf_precoder(c, w, power, eps), noise));
    }, py::arg("channel"), py::arg("beams"), py::arg("tx_power") = 1.0, py::arg("epsilon") = 1e-10,
       py::arg("noise_power") = 1e-3);

    m.def("propagate", [](py::array_t<cplx, py::array::c_style | py::array::forcecast> samples, double window,
                          double wavelength, double distance, double apodization) {
        return to_array(propagate_angular_spectrum(field_from(samples, window, apodization, wavelength, 0.0), distance).samples);
    }, py::arg("samples"), py::arg("window_width"), py::arg("wavelength"), py::arg("distance"),
       py::arg("apodization_width") = 0.0, "Angular-spectrum propagation of a field sampled on x_i = (i - Nx/2) dx");
    m.def("propagate_direct", [](py::array_t<cplx, py::array::c_style | py::array::forcecast> samples, double window,
                                 double wavelength, double distance) {
        return to_array(propagate_direct_fresnel(field_from(samples, window, 0.0, wavelength, 0.0), distance).samples);
    }, py::arg("samples"), py::arg("window_width"), py::arg("wavelength"), py::arg("distance"));
    m.def("intensity_map", [](const ScenarioConfig &s, const Eigen::VectorXcd &beam, const std::vector<double> &depths) {
        const auto aperture = embed_aperture(std::span<const cplx>(beam.data(), static_cast<std::size_t>(beam.size())),
                                             s.array, s.grid, s.carrier);
        const auto map = intensity_map(aperture, s.obstacle, depths);
        py::array_t<double> db({map.depths.size(), map.x.size()});
        std::copy(map.db.begin(), map.db.end(), db.mutable_data());
        return py::make_tuple(db, py::array_t<double>(map.x.size(), map.x.data()), map.peak_intensity);
    }, py::arg("scenario"), py::arg("beam"), py::arg("depths"), "Returns (db[depth, x], x, peak_intensity)");

    m.def("run_baseline_scan", [](const ScenarioConfig &s, double first, double last, double step, std::size_t workers) {
        return sweep_dict(run_baseline_scan(s, {first, last, step, workers}));
    }, py::arg("scenario"), py::arg("first") = -15.0, py::arg("last") = 10.0, py::arg("step") = 0.5,
       py::arg("workers") = 0);
    m.def("run_shadow_scan", [](const ScenarioConfig &s, double first, double last, double step, std::size_t workers) {
        ShadowSettings st;
        st.first = first;
        st.last = last;
        st.step = step;
        st.workers = workers;
        return sweep_dict(run_shadow_scan(s, st));
    }, py::arg("scenario"), py::arg("first") = -15.0, py::arg("last") = -1.0, py::arg("step") = 0.5,
       py::arg("workers") = 0);
    m.def("run_robustness_sweep", [](const ScenarioConfig &s, double range, double step, std::size_t workers) {
        RobustnessSettings st;
        st.first = -range;
        st.last = range;
        st.step = step;
        st.workers = workers;
        return sweep_dict(run_robustness_sweep(s, st).sweep);
    }, py::arg("scenario"), py::arg("range") = 3.0, py::arg("step") = 0.25, py::arg("workers") = 0);

    m.def("search", [](const ScenarioConfig &s, std::vector<double> bending, std::vector<double> focal,
                       std::vector<double> offsets_deg, double eta, std::size_t workers) {
        SearchGrids grids = SearchGrids::defaults();
        if (!bending.empty())
            grids.bending = std::move(bending);
        if (!focal.empty())
            grids.focal = std::move(focal);
        if (!offsets_deg.empty())
        {
            grids.angle_offset.clear();
            for (const double d : offsets_deg)
                grids.angle_offset.push_back(radians(d));
        }
        SearchSettings settings;
        settings.eta = eta;
        settings.workers = workers;
        const auto o = coarse_to_fine_search(MixedProblem(s), grids, settings);
        py::dict d;
        d["bending"] = o.best_params.bending;
        d["focal"] = o.best_params.focal;
        d["dtheta_deg"] = degrees(o.best_angle_offset);
        d["rate"] = o.best_rate;
        d["baseline_rate"] = o.baseline_rate;
        d["threshold"] = o.threshold;
        d["evaluations"] = o.evaluations;
        d["rejected"] = o.rejected_by_constraint;
        return d;
    }, py::arg("scenario"), py::arg("bending") = std::vector<double>{}, py::arg("focal") = std::vector<double>{},
       py::arg("dtheta_deg") = std::vector<double>{}, py::arg("eta") = 0.4, py::arg("workers") = 0,
       "Coarse-to-fine Airy search; empty grids fall back to the defaults");
}
