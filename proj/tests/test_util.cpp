#include "test_util.hpp"

#include <cctype>

namespace testutil {

namespace {

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
           c == '.';
}

}  // namespace

bool xml_well_formed(const std::string& text, std::string* error) {
    const auto fail = [&error](const std::string& why) {
        if (error) *error = why;
        return false;
    };

    std::size_t i = 0;
    const std::size_t n = text.size();
    std::vector<std::string> stack;
    bool seen_root = false;
    bool after_root = false;

    while (i < n) {
        const char c = text[i];
        if (c != '<') {
            if (c == '>') return fail("stray '>' outside a tag");
            if (!std::isspace(static_cast<unsigned char>(c)) && stack.empty() && seen_root &&
                after_root)
                return fail("non-whitespace content after root element");
            if (!std::isspace(static_cast<unsigned char>(c)) && stack.empty() && !seen_root)
                return fail("content before root element");
            ++i;
            continue;
        }
        if (text.compare(i, 2, "<?") == 0) {
            const auto end = text.find("?>", i);
            if (end == std::string::npos) return fail("unterminated declaration");
            i = end + 2;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0) {
            const auto end = text.find("-->", i);
            if (end == std::string::npos) return fail("unterminated comment");
            i = end + 3;
            continue;
        }
        const bool closing = i + 1 < n && text[i + 1] == '/';
        std::size_t j = i + (closing ? 2 : 1);
        std::string name;
        while (j < n && name_char(text[j])) name.push_back(text[j++]);
        if (name.empty()) return fail("empty tag name");

        // scan attributes until '>' honoring quotes
        bool self_closing = false;
        while (j < n && text[j] != '>') {
            if (text[j] == '"') {
                const auto end = text.find('"', j + 1);
                if (end == std::string::npos) return fail("unterminated attribute value");
                j = end + 1;
                continue;
            }
            if (text[j] == '<') return fail("'<' inside tag");
            if (text[j] == '/' && j + 1 < n && text[j + 1] == '>') {
                self_closing = true;
            }
            ++j;
        }
        if (j >= n) return fail("unterminated tag");
        i = j + 1;

        if (closing) {
            if (self_closing) return fail("closing tag cannot self-close");
            if (stack.empty() || stack.back() != name)
                return fail("mismatched closing tag: " + name);
            stack.pop_back();
            if (stack.empty()) after_root = true;
        } else if (!self_closing) {
            if (stack.empty() && seen_root) return fail("multiple root elements");
            seen_root = true;
            stack.push_back(name);
        } else {
            if (stack.empty() && seen_root) return fail("multiple root elements");
            if (stack.empty()) {
                seen_root = true;
                after_root = true;
            }
        }
    }
    if (!stack.empty()) return fail("unclosed element: " + stack.back());
    if (!seen_root) return fail("no root element");
    return true;
}

}  // namespace testutil
