#include "motivic/report.hpp"

#include <sstream>

namespace motivic {

using nlohmann::json;

json Report::to_json() const {
    json v = json::array();
    for (const auto& viol : violations)
        v.push_back({{"rule", viol.rule}, {"subject", viol.subject}, {"detail", viol.detail}});
    return json{{"version", version},
                {"universe", universe},
                {"command", command},
                {"payload", payload},
                {"violations", v}};
}

namespace {

void render_text(const json& value, const std::string& prefix, std::ostream& os) {
    if (value.is_object()) {
        if (value.empty()) {
            os << prefix << ": {}\n";
            return;
        }
        for (auto it = value.begin(); it != value.end(); ++it) {
            std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
            render_text(it.value(), key, os);
        }
    } else if (value.is_array()) {
        if (value.empty()) {
            os << prefix << ": []\n";
            return;
        }
        std::size_t i = 0;
        for (const auto& item : value) render_text(item, prefix + "[" + std::to_string(i++) + "]", os);
    } else {
        os << prefix << ": " << value.dump() << "\n";
    }
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format) {
    json doc = r.to_json();
    if (format == ReportFormat::json) return doc.dump(2) + "\n";
    std::ostringstream os;
    os << "universe '" << doc["universe"].get<std::string>() << "', command '"
       << doc["command"].get<std::string>() << "' (motivic " << doc["version"].get<std::string>()
       << ")\n";
    if (!doc["violations"].empty()) {
        os << "violations:\n";
        for (const auto& v : doc["violations"])
            os << "  [" << v["rule"].get<std::string>() << "] " << v["subject"].get<std::string>()
               << ": " << v["detail"].get<std::string>() << "\n";
    } else {
        os << "violations: none\n";
    }
    render_text(doc["payload"], "", os);
    return os.str();
}

}  // namespace motivic
