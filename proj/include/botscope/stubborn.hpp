#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace botscope {

struct TweetRecord {
    std::string user;
    std::optional<double> score;  // opinion of the tweet, in [0,1]
    std::string text;
    std::string timestamp;
    size_t line = 0;  // provenance for error messages
};

// Tweets file: `user_id,score[,text][,timestamp]`. Text must not contain the
// delimiter. A record needs a score or text; rows with neither are rejected.
std::vector<TweetRecord> load_tweets_csv(const std::string& path, char delimiter = ',',
                                         bool has_header = false);

// Per-user mean of tweet scores. Records without a score are skipped (they
// are text-only and must be scored first); users with no scored tweets are
// absent. A score outside [0,1] raises an error naming the record.
std::unordered_map<std::string, double> user_opinions(const std::vector<TweetRecord>& tweets);

// Posting rate = raw tweet-row count per user, scored or not.
std::unordered_map<std::string, double> assign_rates(const std::vector<TweetRecord>& tweets);

struct PhraseLexicon {
    std::vector<std::string> pro;   // matching only these -> opinion 1
    std::vector<std::string> anti;  // matching only these -> opinion 0
    bool token_match = false;       // false: substring match (case-insensitive)

    void validate() const;
};

// Two-section plain text: a `[pro]` line, pro phrases one per line, an
// `[anti]` line, anti phrases. Blank lines and `#` comments ignored.
PhraseLexicon load_lexicon(const std::string& path);

// Profiles mapped to {0,1} opinions by phrase matching; users matching both
// sides or neither are left unlabeled.
std::unordered_map<std::string, double> label_by_profile_phrases(
    const std::vector<std::pair<std::string, std::string>>& profiles, const PhraseLexicon& lexicon);

std::vector<std::pair<std::string, std::string>> load_profiles_csv(const std::string& path,
                                                                   char delimiter = ',',
                                                                   bool has_header = false);

struct StubbornConfig {
    double lower_max = 0.1;  // stubborn interval [0, lower_max]
    double upper_min = 0.9;  // stubborn interval [upper_min, 1]

    void validate() const;
};

struct StubbornAssignment {
    // stubborn users with their anchored opinions
    std::unordered_map<std::string, double> stubborn_opinion;
    std::vector<std::string> non_stubborn;
};

// A user is stubborn iff their opinion falls in an extreme interval or they
// are forced (detected bots); the anchor is always the measured opinion.
// A forced user with no opinion is an error: a bot needs an opinion to anchor.
StubbornAssignment classify_stubborn(const std::unordered_map<std::string, double>& opinions,
                                     const StubbornConfig& cfg,
                                     const std::unordered_set<std::string>& forced_stubborn);

}  // namespace botscope
