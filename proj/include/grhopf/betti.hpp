#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace grhopf {

/// Bigraded dimension table over a finite (s, t) window. Only nonzero cells
/// are stored; serialization lists them ascending by (s, t).
struct BettiTable {
    unsigned smax = 0, tmax = 0;
    std::map<std::pair<unsigned, unsigned>, unsigned> dims;

    unsigned at(unsigned s, unsigned t) const {
        auto it = dims.find({s, t});
        return it == dims.end() ? 0 : it->second;
    }

    void set(unsigned s, unsigned t, unsigned d) {
        if (d) dims[{s, t}] = d;
    }

    bool operator==(const BettiTable& o) const { return dims == o.dims; }
    bool operator!=(const BettiTable& o) const { return !(*this == o); }

    std::string to_tsv() const {
        std::ostringstream os;
        for (auto& [st, d] : dims) os << st.first << "\t" << st.second << "\t" << d << "\n";
        return os.str();
    }

    /// Entry-wise multiple comparison (coefficient tables).
    bool is_multiple_of(const BettiTable& base, unsigned factor) const {
        if (dims.size() != base.dims.size()) return false;
        for (auto& [st, d] : base.dims)
            if (at(st.first, st.second) != factor * d) return false;
        return true;
    }
};

}  // namespace grhopf
