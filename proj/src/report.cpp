#include "bergman_ops/report.hpp"

#include <cstdio>

namespace bergman_ops {

std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

json_value json_value::object() {
    json_value v;
    v.kind_ = kind::object;
    return v;
}

json_value json_value::array() {
    json_value v;
    v.kind_ = kind::array;
    return v;
}

json_value json_value::number(double n) {
    json_value v;
    v.kind_ = kind::number;
    v.number_ = n;
    return v;
}

json_value json_value::integer(std::int64_t n) {
    json_value v;
    v.kind_ = kind::integer;
    v.integer_ = n;
    return v;
}

json_value json_value::boolean(bool b) {
    json_value v;
    v.kind_ = kind::boolean;
    v.boolean_ = b;
    return v;
}

json_value json_value::string(std::string s) {
    json_value v;
    v.kind_ = kind::string;
    v.string_ = std::move(s);
    return v;
}

json_value json_value::complex_pair(cplx c) {
    json_value v;
    v.kind_ = kind::complex_num;
    v.complex_ = c;
    return v;
}

json_value json_value::null() { return json_value(); }

json_value& json_value::put(std::string key, json_value v) {
    members_.emplace_back(std::move(key), std::move(v));
    return *this;
}

json_value& json_value::push(json_value v) {
    elements_.push_back(std::move(v));
    return *this;
}

void json_value::dump_to(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string pad_close(static_cast<std::size_t>(indent) * depth, ' ');
    switch (kind_) {
        case kind::null: out += "null"; break;
        case kind::boolean: out += boolean_ ? "true" : "false"; break;
        case kind::integer: out += std::to_string(integer_); break;
        case kind::number: out += format_double17(number_); break;
        case kind::string:
            out += '"';
            out += json_escape(string_);
            out += '"';
            break;
        case kind::complex_num:
            out += '[';
            out += format_double17(complex_.real());
            out += ", ";
            out += format_double17(complex_.imag());
            out += ']';
            break;
        case kind::array:
            if (elements_.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < elements_.size(); ++i) {
                out += pad;
                elements_[i].dump_to(out, indent, depth + 1);
                if (i + 1 < elements_.size()) {
                    out += ',';
                }
                out += '\n';
            }
            out += pad_close;
            out += ']';
            break;
        case kind::object:
            if (members_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += pad;
                out += '"';
                out += json_escape(members_[i].first);
                out += "\": ";
                members_[i].second.dump_to(out, indent, depth + 1);
                if (i + 1 < members_.size()) {
                    out += ',';
                }
                out += '\n';
            }
            out += pad_close;
            out += '}';
            break;
    }
}

std::string json_value::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    out += '\n';
    return out;
}

json_value echo_to_json(const params_echo& echo) {
    json_value obj = json_value::object();
    for (const echo_entry& entry : echo) {
        if (const auto* i = std::get_if<std::int64_t>(&entry.value)) {
            obj.put(entry.key, json_value::integer(*i));
        } else if (const auto* d = std::get_if<double>(&entry.value)) {
            obj.put(entry.key, json_value::number(*d));
        } else if (const auto* c = std::get_if<cplx>(&entry.value)) {
            obj.put(entry.key, json_value::complex_pair(*c));
        } else {
            obj.put(entry.key, json_value::string(std::get<std::string>(entry.value)));
        }
    }
    return obj;
}

json_value witness_to_json(const std::optional<check_witness>& witness) {
    if (!witness) {
        return json_value::null();
    }
    json_value obj = json_value::object();
    if (const auto* idx = std::get_if<witness_index>(&*witness)) {
        obj.put("j", json_value::integer(idx->j));
        obj.put("k", json_value::integer(idx->k));
    } else {
        const auto& pt = std::get<witness_point>(*witness);
        obj.put("z", json_value::complex_pair(pt.z));
        obj.put("w", json_value::complex_pair(pt.w));
    }
    return obj;
}

json_value report_to_json(const check_report& report) {
    json_value obj = json_value::object();
    obj.put("check_id", json_value::string(report.check_id));
    obj.put("verdict", json_value::string(report.pass ? "pass" : "fail"));
    obj.put("max_residual", json_value::number(report.max_residual));
    obj.put("tolerance", json_value::number(report.tolerance));
    obj.put("trunc_order", json_value::integer(report.trunc_order));
    obj.put("witness", witness_to_json(report.witness));
    obj.put("params_echo", echo_to_json(report.params));
    obj.put("notes", json_value::string(report.notes));
    return obj;
}

}  // namespace bergman_ops
