#include "botscope/stubborn.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "botscope/csv.hpp"
#include "botscope/errors.hpp"

namespace botscope {

std::vector<TweetRecord> load_tweets_csv(const std::string& path, char delimiter, bool has_header) {
    std::vector<TweetRecord> records;
    csv::for_each_row(path, delimiter, has_header,
                      [&](size_t lineno, const std::vector<std::string_view>& fields) {
                          if (fields.size() < 2 || fields.size() > 4)
                              throw io_error(path + ":" + std::to_string(lineno) +
                                             ": expected user_id,score[,text][,timestamp]");
                          TweetRecord rec;
                          rec.line = lineno;
                          rec.user = std::string(csv::trim(fields[0]));
                          if (rec.user.empty())
                              throw io_error(path + ":" + std::to_string(lineno) + ": empty user id");
                          auto score_field = csv::trim(fields[1]);
                          if (!score_field.empty()) {
                              double s;
                              if (!csv::parse_double(score_field, s))
                                  throw io_error(path + ":" + std::to_string(lineno) +
                                                 ": bad score '" + std::string(score_field) + "'");
                              rec.score = s;
                          }
                          if (fields.size() >= 3) rec.text = std::string(csv::trim(fields[2]));
                          if (fields.size() == 4) rec.timestamp = std::string(csv::trim(fields[3]));
                          if (!rec.score && rec.text.empty())
                              throw io_error(path + ":" + std::to_string(lineno) +
                                             ": record has neither score nor text");
                          records.push_back(std::move(rec));
                      });
    return records;
}

std::unordered_map<std::string, double> user_opinions(const std::vector<TweetRecord>& tweets) {
    std::unordered_map<std::string, std::pair<double, size_t>> acc;
    for (const auto& rec : tweets) {
        if (!rec.score) continue;
        double s = *rec.score;
        if (!(s >= 0.0 && s <= 1.0))
            throw invalid_parameter_error("tweet score outside [0,1] for user " + rec.user +
                                          " (line " + std::to_string(rec.line) + ")");
        auto& slot = acc[rec.user];
        slot.first += s;
        slot.second += 1;
    }
    std::unordered_map<std::string, double> result;
    result.reserve(acc.size());
    for (const auto& [user, sums] : acc)
        result.emplace(user, sums.first / static_cast<double>(sums.second));
    return result;
}

std::unordered_map<std::string, double> assign_rates(const std::vector<TweetRecord>& tweets) {
    std::unordered_map<std::string, double> rates;
    for (const auto& rec : tweets) rates[rec.user] += 1.0;
    return rates;
}

void PhraseLexicon::validate() const {
    for (const auto& p : pro)
        if (std::find(anti.begin(), anti.end(), p) != anti.end())
            throw invalid_parameter_error("lexicon: phrase '" + p + "' appears in both sections");
}

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> tokenize_lower(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '#' || ch == '@') {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

bool matches_any(const std::string& lowered_text, const std::vector<std::string>& tokens,
                 const std::vector<std::string>& phrases, bool token_match) {
    for (const auto& phrase : phrases) {
        std::string p = to_lower(phrase);
        if (token_match) {
            if (std::find(tokens.begin(), tokens.end(), p) != tokens.end()) return true;
        } else if (lowered_text.find(p) != std::string::npos) {
            return true;
        }
    }
    return false;
}

}  // namespace

PhraseLexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open lexicon file: " + path);
    PhraseLexicon lex;
    std::vector<std::string>* section = nullptr;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = csv::trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (t == "[pro]") {
            section = &lex.pro;
        } else if (t == "[anti]") {
            section = &lex.anti;
        } else if (t.front() == '[') {
            throw io_error(path + ":" + std::to_string(lineno) + ": unknown section " + std::string(t));
        } else {
            if (!section)
                throw io_error(path + ":" + std::to_string(lineno) +
                               ": phrase before any [pro]/[anti] section");
            section->emplace_back(t);
        }
    }
    lex.validate();
    return lex;
}

std::unordered_map<std::string, double> label_by_profile_phrases(
    const std::vector<std::pair<std::string, std::string>>& profiles, const PhraseLexicon& lexicon) {
    lexicon.validate();
    std::unordered_map<std::string, double> labels;
    for (const auto& [user, description] : profiles) {
        std::string lowered = to_lower(description);
        std::vector<std::string> tokens;
        if (lexicon.token_match) tokens = tokenize_lower(description);
        bool pro = matches_any(lowered, tokens, lexicon.pro, lexicon.token_match);
        bool anti = matches_any(lowered, tokens, lexicon.anti, lexicon.token_match);
        if (pro == anti) continue;  // neither, or conflicting evidence
        labels[user] = pro ? 1.0 : 0.0;
    }
    return labels;
}

std::vector<std::pair<std::string, std::string>> load_profiles_csv(const std::string& path,
                                                                   char delimiter, bool has_header) {
    std::vector<std::pair<std::string, std::string>> profiles;
    csv::for_each_row(path, delimiter, has_header,
                      [&](size_t lineno, const std::vector<std::string_view>& fields) {
                          if (fields.size() != 2)
                              throw io_error(path + ":" + std::to_string(lineno) +
                                             ": expected user_id,description");
                          profiles.emplace_back(std::string(csv::trim(fields[0])),
                                                std::string(fields[1]));
                      });
    return profiles;
}

void StubbornConfig::validate() const {
    if (!(lower_max >= 0.0 && lower_max < upper_min && upper_min <= 1.0))
        throw invalid_parameter_error("stubborn intervals must satisfy 0 <= a < b <= 1");
}

StubbornAssignment classify_stubborn(const std::unordered_map<std::string, double>& opinions,
                                     const StubbornConfig& cfg,
                                     const std::unordered_set<std::string>& forced_stubborn) {
    cfg.validate();
    StubbornAssignment out;
    for (const auto& [user, op] : opinions) {
        if (!(op >= 0.0 && op <= 1.0))
            throw invalid_parameter_error("opinion outside [0,1] for user " + user);
        bool stubborn = op <= cfg.lower_max || op >= cfg.upper_min || forced_stubborn.count(user) > 0;
        if (stubborn)
            out.stubborn_opinion.emplace(user, op);
        else
            out.non_stubborn.push_back(user);
    }
    for (const auto& user : forced_stubborn) {
        if (!opinions.count(user))
            throw infeasibility_error("forced-stubborn user '" + user +
                                      "' has no measured opinion to anchor");
    }
    std::sort(out.non_stubborn.begin(), out.non_stubborn.end());
    return out;
}

}  // namespace botscope
