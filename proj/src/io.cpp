#include "mazer/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mazer {

using nlohmann::json;

namespace {

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ValidationError(std::string("descriptor needs numeric field \"") + key + "\"");
    return j[key].get<double>();
}

std::vector<Complex> complex_list(const json& j, const char* key) {
    std::vector<Complex> out;
    if (!j.contains(key))
        return out;
    const json& arr = j[key];
    if (!arr.is_array())
        throw ValidationError(std::string("state field \"") + key
                              + "\" must be an array of [re, im] pairs");
    for (const json& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw ValidationError(std::string("state field \"") + key
                                  + "\" must contain [re, im] pairs");
        out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
}

json complex_pair(Complex c) {
    return json::array({c.real(), c.imag()});
}

} // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ModeProfile profile_from_json(const json& j) {
    if (!j.contains("mode") || !j["mode"].is_string())
        throw ValidationError("profile descriptor needs a \"mode\" string");
    const std::string mode = j["mode"].get<std::string>();
    const double kappa_L = require_number(j, "kappa_L");
    if (mode == "mesa")
        return ModeProfile::mesa(kappa_L);
    if (mode == "sech2")
        return ModeProfile::sech2(j.contains("width") ? require_number(j, "width") : 1.0,
                                  kappa_L);
    if (mode == "gaussian")
        return ModeProfile::gaussian(j.contains("width") ? require_number(j, "width") : 1.0,
                                     kappa_L);
    if (mode == "sin") {
        int lobes = 1;
        if (j.contains("lobes")) {
            if (!j["lobes"].is_number_integer())
                throw ValidationError("\"lobes\" must be an integer");
            lobes = j["lobes"].get<int>();
        }
        return ModeProfile::sinusoidal(lobes, kappa_L);
    }
    if (mode == "expr") {
        if (!j.contains("expr") || !j["expr"].is_string())
            throw ValidationError("mode \"expr\" needs an \"expr\" string");
        return ModeProfile::custom(parse_profile_expr(j["expr"].get<std::string>()), kappa_L);
    }
    throw ValidationError("unknown mode \"" + mode
                          + "\" (expected mesa, sech2, gaussian, sin, or expr)");
}

json profile_to_json(const ModeProfile& profile) {
    json j;
    j["kappa_L"] = profile.length();
    switch (profile.kind()) {
        case ModeProfile::Kind::Mesa: j["mode"] = "mesa"; break;
        case ModeProfile::Kind::Sech2:
            j["mode"] = "sech2";
            j["width"] = profile.width();
            break;
        case ModeProfile::Kind::Gaussian:
            j["mode"] = "gaussian";
            j["width"] = profile.width();
            break;
        case ModeProfile::Kind::Sinusoidal:
            j["mode"] = "sin";
            j["lobes"] = profile.lobes();
            break;
        case ModeProfile::Kind::Custom:
            j["mode"] = "expr";
            j["expr"] = profile.expression().print();
            break;
    }
    return j;
}

PureStateSpec state_from_json(const json& j) {
    if (!j.contains("form") || !j["form"].is_string())
        throw ValidationError("state needs a \"form\" field (\"product\" or \"joint\")");
    const std::string form = j["form"].get<std::string>();
    if (form == "product") {
        if (!j.contains("atom") || !j["atom"].is_array() || j["atom"].size() != 4)
            throw ValidationError("product state needs \"atom\": [re_a, im_a, re_b, im_b]");
        for (const json& v : j["atom"])
            if (!v.is_number())
                throw ValidationError("\"atom\" entries must be numbers");
        ProductState s;
        s.c_a = Complex(j["atom"][0].get<double>(), j["atom"][1].get<double>());
        s.c_b = Complex(j["atom"][2].get<double>(), j["atom"][3].get<double>());
        s.field = complex_list(j, "field");
        if (s.field.empty())
            throw ValidationError("product state needs a nonempty \"field\" list");
        return s;
    }
    if (form == "joint") {
        JointState s;
        s.a = complex_list(j, "a");
        s.b = complex_list(j, "b");
        if (s.a.empty() && s.b.empty())
            throw ValidationError("joint state needs \"a\" and/or \"b\" coefficient lists");
        return s;
    }
    throw ValidationError("unknown state form \"" + form + "\"");
}

json state_to_json(const PureStateSpec& state) {
    json j;
    if (const auto* p = std::get_if<ProductState>(&state)) {
        j["form"] = "product";
        j["atom"] = json::array({p->c_a.real(), p->c_a.imag(), p->c_b.real(), p->c_b.imag()});
        json field = json::array();
        for (const Complex& f : p->field)
            field.push_back(complex_pair(f));
        j["field"] = field;
        return j;
    }
    const auto& s = std::get<JointState>(state);
    j["form"] = "joint";
    json a = json::array(), b = json::array();
    for (const Complex& c : s.a)
        a.push_back(complex_pair(c));
    for (const Complex& c : s.b)
        b.push_back(complex_pair(c));
    j["a"] = a;
    j["b"] = b;
    return j;
}

json coords_to_json(const DressedCoordinates& coords) {
    json j;
    j["w_minus1"] = coords.w_minus1;
    json entries = json::array();
    for (std::size_t n = 0; n < coords.entries.size(); ++n) {
        const DressedEntry& e = coords.entries[n];
        entries.push_back({{"n", n}, {"w", e.w}, {"theta", e.theta},
                           {"chi", e.chi}, {"phi", e.phi}});
    }
    j["entries"] = entries;
    return j;
}

json report_to_json(const ObservablesReport& report) {
    json j;
    j["sigma_aa_initial"] = report.sigma_aa_initial;
    j["delta_sigma_aa"] = report.delta_sigma_aa;
    j["R"] = report.R;
    j["T"] = report.T;
    json per_n = json::array();
    for (const PerLevel& row : report.per_n)
        per_n.push_back({{"n", row.n}, {"re_K", row.K.real()}, {"im_K", row.K.imag()},
                         {"Delta", row.Delta}, {"delta_P", row.delta_P}});
    j["per_n"] = per_n;
    if (report.k)
        j["k"] = *report.k;
    if (report.packet) {
        if (const auto* g = std::get_if<GaussianPacket>(&*report.packet))
            j["packet"] = {{"type", "gaussian"}, {"k0", g->k0}, {"sigma_k", g->sigma_k}};
        else if (std::get_if<TabulatedPacket>(&*report.packet))
            j["packet"] = {{"type", "tabulated"}};
    }
    return j;
}

std::string report_per_n_csv(const ObservablesReport& report) {
    std::string out = "n,re_K,im_K,Delta,delta_P\n";
    for (const PerLevel& row : report.per_n) {
        out += std::to_string(row.n) + ',' + fmt17(row.K.real()) + ',' + fmt17(row.K.imag())
               + ',' + fmt17(row.Delta) + ',' + fmt17(row.delta_P) + '\n';
    }
    return out;
}

std::string amplitude_table_csv(const AmplitudeTable& table) {
    std::string out = "n,branch,k_over_kappa,re_r,im_r,re_t,im_t,defect\n";
    for (const Amplitudes& a : table.entries()) {
        out += std::to_string(a.channel.n);
        out += a.channel.branch == Branch::Plus ? ",+," : ",-,";
        out += fmt17(a.k) + ',' + fmt17(a.r.real()) + ',' + fmt17(a.r.imag()) + ','
               + fmt17(a.t.real()) + ',' + fmt17(a.t.imag()) + ','
               + fmt17(unitarity_defect(a)) + '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("read failure on " + path);
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << contents;
    out.flush();
    if (!out)
        throw IoError("write failure on " + path);
}

} // namespace mazer
