#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "grhopf/grhopf.hpp"

namespace testutil {

inline std::string read_data_file(const std::string& name) {
    std::ifstream in(std::string(GRHOPF_DATA_DIR) + "/" + name, std::ios::binary);
    if (!in) throw std::runtime_error("missing data file: " + name);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline grhopf::PresPtr load(const std::string& name) {
    return grhopf::presentation_from_text(read_data_file(name));
}

// The running example set: all algebras the suites exercise.
inline grhopf::PresPtr nococentral() { return load("nococentral.hopf"); }
inline grhopf::PresPtr oneyesoneno() { return load("oneyesoneno.hopf"); }
inline grhopf::PresPtr linearcombination() { return load("linearcombination.hopf"); }
inline grhopf::PresPtr evenodd_p3() { return load("evenodd_p3.hopf"); }
inline grhopf::PresPtr elementary_p2_d1() { return load("elementary_p2_d1.hopf"); }
inline grhopf::PresPtr elementary_p3_d2() { return load("elementary_p3_d2.hopf"); }
inline grhopf::PresPtr witt_x4_p2() { return load("witt_x4_p2.hopf"); }

inline grhopf::Element gen(const grhopf::HopfPresentation& h, const std::string& name) {
    for (std::size_t g = 0; g < h.num_gens(); ++g)
        if (h.gen(g).name == name) return h.gen_element(g);
    throw std::runtime_error("no generator named " + name);
}

}  // namespace testutil
