#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bergman_ops/checkers.hpp"

namespace bergman_ops {

/// %.17g rendering; all report floats go through this so identical runs
/// serialize byte-identically.
std::string format_double17(double v);

std::string json_escape(const std::string& s);

/// Minimal insertion-ordered JSON document builder. Complex numbers are
/// emitted as two-element [re, im] arrays.
class json_value {
public:
    static json_value object();
    static json_value array();
    static json_value number(double v);
    static json_value integer(std::int64_t v);
    static json_value boolean(bool v);
    static json_value string(std::string v);
    static json_value complex_pair(cplx v);
    static json_value null();

    json_value& put(std::string key, json_value v);  // object members
    json_value& push(json_value v);                  // array elements

    std::string dump(int indent = 2) const;

private:
    enum class kind { object, array, number, integer, boolean, string, complex_num, null };

    json_value() = default;

    void dump_to(std::string& out, int indent, int depth) const;

    kind kind_ = kind::null;
    double number_ = 0.0;
    std::int64_t integer_ = 0;
    bool boolean_ = false;
    std::string string_;
    cplx complex_{};
    std::vector<std::pair<std::string, json_value>> members_;
    std::vector<json_value> elements_;
};

json_value echo_to_json(const params_echo& echo);
json_value witness_to_json(const std::optional<check_witness>& witness);
json_value report_to_json(const check_report& report);

}  // namespace bergman_ops
