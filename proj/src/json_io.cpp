#include "resolvent_lab/json_io.hpp"

#include <cstdio>
#include <vector>

#include "json.hpp"

#include "resolvent_lab/errors.hpp"

namespace resolvent_lab {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const char* what) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_object() || !j.contains("re"))
        throw Error(std::string(what) + " must be a number or {\"re\":..,\"im\":..}");
    return Complex(j.at("re").get<double>(), j.value("im", 0.0));
}

json complex_to_json(Complex z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

} // namespace

Generator parse_generator(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("bad generator JSON: ") + e.what());
    }
    try {
        const std::string form = j.at("form").get<std::string>();
        if (form == "herglotz") {
            std::vector<BoundaryAtom> atoms;
            for (const auto& a : j.at("atoms"))
                atoms.push_back({a.at("angle").get<double>(), a.at("mass").get<double>()});
            return Generator::herglotz(make_herglotz(atoms, j.value("gamma", 0.0)));
        }
        if (form == "omega") {
            return Generator::omega(parse_complex(j.at("q"), "q"),
                                    parse_complex(j.at("c"), "c"), j.value("m", 1));
        }
        throw Error("unknown generator form \"" + form + "\"");
    } catch (const json::exception& e) {
        throw Error(std::string("bad generator JSON: ") + e.what());
    }
}

std::string generator_to_json(const Generator& gen) {
    nlohmann::ordered_json j;
    if (gen.is_herglotz_form()) {
        const HerglotzFn& h = gen.herglotz_form();
        j["form"] = "herglotz";
        j["atoms"] = json::array();
        for (const auto& a : h.atoms())
            j["atoms"].push_back({{"angle", a.angle}, {"mass", a.mass}});
        j["gamma"] = h.gamma();
    } else {
        const Generator::OmegaForm& o = gen.omega_form();
        j["form"] = "omega";
        j["q"] = complex_to_json(o.q);
        j["c"] = complex_to_json(o.c);
        j["m"] = o.m;
    }
    return j.dump();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace resolvent_lab
