#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorcat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class AlgebraMismatch : public Error { public: using Error::Error; };
class NotUnitary : public Error { public: using Error::Error; };
class ShapeMismatch : public Error { public: using Error::Error; };
class CapExceeded : public Error { public: using Error::Error; };
class DimensionOne : public Error { public: using Error::Error; };
class NoStabilization : public Error { public: using Error::Error; };
class NoSolution : public Error { public: using Error::Error; };
class NonFaithful : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };

// One named numerical check: residual plus the threshold it was held to.
struct CheckItem {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<CheckItem> items;

    void add(const std::string& name, double residual, double threshold) {
        items.push_back({name, residual, threshold, residual <= threshold});
    }
    void add_flag(const std::string& name, bool ok) {
        items.push_back({name, ok ? 0.0 : 1.0, 0.5, ok});
    }
    bool pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    double max_residual() const {
        double m = 0.0;
        for (const auto& it : items) m = std::max(m, it.residual);
        return m;
    }
    const CheckItem* find(const std::string& name) const {
        for (const auto& it : items)
            if (it.name == name) return &it;
        return nullptr;
    }
};

} // namespace tensorcat
