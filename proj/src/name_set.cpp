#include "af2db/name_set.hpp"

#include "af2db/error.hpp"

namespace af2db {

std::string format_set(const NameSet& set) {
    std::string out = "{";
    const char* sep = "";
    for (const auto& name : set) {
        out += sep;
        out += name;
        sep = ",";
    }
    out += "}";
    return out;
}

std::string format_family(const Family& family) {
    std::string out;
    for (const auto& set : family) {
        out += format_set(set);
        out += '\n';
    }
    return out;
}

NameSet parse_set(const std::string& text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw ParseError(0, "expected '{...}', got '" + text + "'");
    NameSet out;
    const std::string body = text.substr(1, text.size() - 2);
    if (body.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = body.find(',', start);
        const auto item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item.empty())
            throw ParseError(0, "empty member in '" + text + "'");
        out.insert(item);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace af2db
