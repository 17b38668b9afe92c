#include "opdcat/bounds.hpp"

#include <sstream>
#include <stdexcept>

namespace opdcat {

Bounds Bounds::parse(const std::string& text) {
    Bounds b;
    if (text.empty())
        return b;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bounds: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        uint32_t n = 0;
        try {
            size_t used = 0;
            long parsed = std::stol(val, &used);
            if (used != val.size() || parsed < 0 || parsed > 16)
                throw std::invalid_argument("");
            n = static_cast<uint32_t>(parsed);
        } catch (...) {
            throw std::invalid_argument("bounds: bad value '" + val + "' for " + key +
                                        " (want an integer in 0..16)");
        }
        if (key == "set")
            b.set = n;
        else if (key == "chain")
            b.chain = n;
        else if (key == "tuple")
            b.tuple = n;
        else if (key == "arity")
            b.arity = n;
        else if (key == "dfset")
            b.dfset = n;
        else if (key == "dfchain")
            b.dfchain = n;
        else
            throw std::invalid_argument("bounds: unknown key '" + key + "'");
    }
    return b;
}

std::string Bounds::describe() const {
    std::ostringstream os;
    os << "set=" << set << ",chain=" << chain << ",tuple=" << tuple << ",arity=" << arity
       << ",dfset=" << dfset << ",dfchain=" << dfchain;
    return os.str();
}

}  // namespace opdcat
