#pragma once

#include <chrono>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"

#include "bmo/errors.hpp"

namespace bmo::cli {

using json = nlohmann::ordered_json;

enum class Status { ok, obstructed, no_local_point, inconclusive, error };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::obstructed: return "obstructed";
        case Status::no_local_point: return "no_local_point";
        case Status::inconclusive: return "inconclusive";
        default: return "error";
    }
}

inline Status parse_status(const std::string& s) {
    for (Status x : {Status::ok, Status::obstructed, Status::no_local_point, Status::inconclusive, Status::error}) {
        if (s == to_string(x)) return x;
    }
    throw DomainError("unknown status '" + s + "'");
}

/// 0 for definite outcomes, 2 when precision ran out, 1 on error.
inline int exit_code(Status s) {
    switch (s) {
        case Status::inconclusive: return 2;
        case Status::error: return 1;
        default: return 0;
    }
}

inline constexpr int kUsageExit = 64;

enum class Format { json, text };

struct Report {
    std::string command;
    json params = json::object();
    json result = json::object();
    Status status = Status::ok;
    std::map<std::string, double> timings;  ///< milliseconds per stage, only when requested

    json to_json() const {
        json t = json::object();
        for (const auto& [k, v] : timings) t[k] = v;
        return {{"command", command}, {"params", params}, {"result", result}, {"status", to_string(status)}, {"timings", t}};
    }

    static Report from_json(const json& j) {
        Report r;
        r.command = j.at("command").get<std::string>();
        r.params = j.at("params");
        r.result = j.at("result");
        r.status = parse_status(j.at("status").get<std::string>());
        for (const auto& [k, v] : j.at("timings").items()) r.timings[k] = v.get<double>();
        return r;
    }

    friend bool operator==(const Report& a, const Report& b) {
        return a.command == b.command && a.params == b.params && a.result == b.result && a.status == b.status &&
               a.timings == b.timings;
    }

    std::string render(Format f) const {
        if (f == Format::json) return to_json().dump(2) + "\n";
        std::ostringstream os;
        os << command << ": " << to_string(status) << "\n";
        for (const auto& [k, v] : params.items()) os << "  param " << k << " = " << v.dump() << "\n";
        render_text(os, result, "  ");
        for (const auto& [k, v] : timings) os << "  time " << k << " = " << v << " ms\n";
        return os.str();
    }

private:
    static void render_text(std::ostringstream& os, const json& j, const std::string& indent) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object()) {
                os << indent << k << ":\n";
                render_text(os, v, indent + "  ");
            } else {
                os << indent << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    }
};

/// Runs `fn` and records its wall time under `stage` when `enabled`.
class Stopwatch {
public:
    Stopwatch(Report& r, bool enabled) : r_(r), enabled_(enabled) {}

    template <class F>
    auto stage(const std::string& name, F&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        struct Record {
            Stopwatch* s;
            std::string name;
            std::chrono::steady_clock::time_point t0;
            ~Record() {
                if (!s->enabled_) return;
                std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - t0;
                s->r_.timings[name] += d.count();
            }
        } rec{this, name, t0};
        return fn();
    }

private:
    Report& r_;
    bool enabled_;
};

}  // namespace bmo::cli
