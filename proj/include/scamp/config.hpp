#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scamp/common.hpp"

namespace scamp {

// Flat key = value document with '#' comments. Used for run configs and
// body definition files.
class kv_file {
  public:
    kv_file() = default;

    static kv_file parse_text(const std::string& text, const std::string& origin = "<text>") {
        kv_file kv;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string s = strip_comment(line);
            if (trim(s).empty()) continue;
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw config_error(origin + ":" + std::to_string(lineno) + ": expected key = value");
            std::string key = trim(s.substr(0, eq));
            std::string val = trim(s.substr(eq + 1));
            if (key.empty())
                throw config_error(origin + ":" + std::to_string(lineno) + ": empty key");
            kv.values_[key] = val;
        }
        return kv;
    }

    static kv_file load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open config file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_text(ss.str(), path);
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& def) const {
        touch(key);
        auto it = values_.find(key);
        return it == values_.end() ? def : it->second;
    }

    double get_double(const std::string& key, double def) const {
        touch(key);
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        return parse_double(key, it->second);
    }

    int get_int(const std::string& key, int def) const {
        touch(key);
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        try {
            size_t pos = 0;
            long v = std::stol(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return int(v);
        } catch (...) {
            throw config_error("key '" + key + "': not an integer: " + it->second);
        }
    }

    bool get_bool(const std::string& key, bool def) const {
        touch(key);
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        const std::string& v = it->second;
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw config_error("key '" + key + "': not a boolean: " + v);
    }

    std::vector<double> get_double_list(const std::string& key, std::vector<double> def) const {
        touch(key);
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        std::vector<double> out;
        std::string item;
        std::istringstream ss(it->second);
        while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
        return out;
    }

    std::vector<int> get_int_list(const std::string& key, std::vector<int> def) const {
        std::vector<double> d = get_double_list(key, {});
        if (!has(key)) return def;
        std::vector<int> out;
        for (double v : d) out.push_back(int(v));
        return out;
    }

    // Keys present in the file but never read by any getter. Callers use this
    // to reject typos after parsing all known keys.
    std::vector<std::string> unread_keys() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : values_) {
            if (!read_.count(k)) out.push_back(k);
        }
        return out;
    }

    void set(const std::string& key, const std::string& val) { values_[key] = val; }

    const std::map<std::string, std::string>& values() const { return values_; }

    static std::string trim(const std::string& s) {
        size_t a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        size_t b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

  private:
    static std::string strip_comment(const std::string& s) {
        auto pos = s.find('#');
        return pos == std::string::npos ? s : s.substr(0, pos);
    }

    static double parse_double(const std::string& key, const std::string& v) {
        try {
            size_t pos = 0;
            double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("");
            return d;
        } catch (...) {
            throw config_error("key '" + key + "': not a number: " + v);
        }
    }

    void touch(const std::string& key) const { read_.insert(key); }

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> read_;
};

}  // namespace scamp
