#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "cocite/error.hpp"
#include "cocite/text.hpp"

namespace cocite {

enum class PubType { journal_article, report, proceedings, thesis, book, chapter, other };

inline const char* to_string(PubType t) {
    switch (t) {
        case PubType::journal_article: return "journal-article";
        case PubType::report: return "report";
        case PubType::proceedings: return "proceedings";
        case PubType::thesis: return "thesis";
        case PubType::book: return "book";
        case PubType::chapter: return "chapter";
        case PubType::other: return "other";
    }
    return "other";
}

/// Unknown tokens map to `other`; `was_known` lets callers tally them.
inline PubType parse_pub_type(std::string_view s, bool* was_known = nullptr) {
    if (was_known) *was_known = true;
    if (s == "journal-article") return PubType::journal_article;
    if (s == "report") return PubType::report;
    if (s == "proceedings") return PubType::proceedings;
    if (s == "thesis") return PubType::thesis;
    if (s == "book") return PubType::book;
    if (s == "chapter") return PubType::chapter;
    if (s == "other" || s.empty()) return PubType::other;
    if (was_known) *was_known = false;
    return PubType::other;
}

struct StudyRecord {
    std::string study_id;
    std::string title;
    std::optional<std::string> series_id;
    std::string release_date;  // ISO-8601, kept verbatim
    std::vector<std::string> subject_terms;  // deduplicated, input order
    std::vector<std::string> investigators;
    bool is_restricted = false;
};

struct PublicationRecord {
    std::string publication_id;
    std::optional<int> year;
    PubType pub_type = PubType::other;
    std::vector<std::string> for_codes;  // deduplicated, input order
};

struct CitationLink {
    std::string publication_id;
    std::string study_id;
    bool operator==(const CitationLink&) const = default;
};

struct IngestStats {
    std::size_t citation_rows = 0;
    std::size_t duplicate_links = 0;
    std::size_t unknown_pub_types = 0;
    std::size_t publications_without_fields = 0;
};

struct Corpus {
    std::vector<StudyRecord> studies;
    std::vector<PublicationRecord> publications;
    std::vector<CitationLink> links;
    IngestStats stats;
};

enum class DatasetKind { series, standalone_study };

/// Analysis unit: a series (all its member studies) or a standalone study.
struct DatasetNode {
    std::string dataset_id;
    DatasetKind kind = DatasetKind::standalone_study;
    std::vector<std::string> member_study_ids;        // sorted
    std::map<std::string, std::size_t> subject_terms;  // multiset over members
    std::string display_name;
};

struct DatasetIndex {
    std::vector<DatasetNode> datasets;  // sorted by dataset_id
    std::unordered_map<std::string, std::string> study_to_dataset;

    const DatasetNode& at(const std::string& dataset_id) const {
        auto it = std::lower_bound(datasets.begin(), datasets.end(), dataset_id,
                                   [](const DatasetNode& d, const std::string& id) { return d.dataset_id < id; });
        if (it == datasets.end() || it->dataset_id != dataset_id)
            throw LookupError("unknown dataset '" + dataset_id + "'");
        return *it;
    }
};

struct FieldCode {
    std::string code;
    std::string name;
    std::string parent_code;
    std::string parent_name;
};

/// Field-of-research taxonomy; divisions are rows whose parent is themselves.
class Taxonomy {
public:
    static Taxonomy load(const std::string& path) {
        Taxonomy t;
        DelimitedReader reader(path);
        auto c_code = reader.column("code");
        auto c_name = reader.column("name");
        auto c_parent = reader.column("parent_code");
        auto c_parent_name = reader.column("parent_name");
        std::vector<std::string> row;
        while (reader.next(row)) {
            FieldCode fc{row[c_code], row[c_name], row[c_parent], row[c_parent_name]};
            if (fc.code.empty()) throw ParseError("empty field code", reader.line());
            if (fc.parent_code != fc.code && fc.code.rfind(fc.parent_code, 0) != 0)
                throw ParseError("parent code '" + fc.parent_code + "' is not a prefix of '" + fc.code + "'",
                                 reader.line());
            t.codes_[fc.code] = fc;
        }
        for (const auto& [code, fc] : t.codes_)
            if (fc.parent_code == code) t.divisions_.push_back(code);
        return t;
    }

    bool has(const std::string& code) const { return codes_.count(code) != 0; }

    const FieldCode& at(const std::string& code) const {
        auto it = codes_.find(code);
        if (it == codes_.end()) throw LookupError("unknown field code '" + code + "'");
        return it->second;
    }

    /// The unique top-level division whose code prefixes the given code.
    const FieldCode& parent_division(const std::string& code) const {
        const FieldCode& fc = at(code);
        if (fc.parent_code == fc.code) return fc;
        const FieldCode* found = nullptr;
        for (const auto& div : divisions_) {
            if (code.rfind(div, 0) == 0) {
                if (found) throw LookupError("ambiguous division for code '" + code + "'");
                found = &codes_.at(div);
            }
        }
        if (!found) throw LookupError("no division for code '" + code + "'");
        return *found;
    }

    const std::vector<std::string>& divisions() const { return divisions_; }

private:
    std::map<std::string, FieldCode> codes_;
    std::vector<std::string> divisions_;  // sorted (std::map order)
};

namespace detail {

inline std::vector<std::string> dedup_keep_order(std::vector<std::string> items) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (auto& s : items)
        if (seen.insert(s).second) out.push_back(std::move(s));
    return out;
}

inline bool is_jsonl(const std::string& path) {
    return ends_with(path, ".jsonl") || ends_with(path, ".ndjson");
}

inline std::vector<std::string> json_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return {};
    const auto& v = j.at(key);
    if (v.is_string()) return split_list(v.get<std::string>());
    std::vector<std::string> out;
    for (const auto& item : v) out.push_back(item.get<std::string>());
    return out;
}

template <typename RowFn, typename JsonFn>
void for_each_record(const std::string& path, RowFn&& on_row, JsonFn&& on_json) {
    if (is_jsonl(path)) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open " + path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (trim(line).empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(std::string("bad JSON record: ") + e.what(), lineno);
            }
            on_json(j, lineno);
        }
    } else {
        DelimitedReader reader(path);
        std::vector<std::string> row;
        while (reader.next(row)) on_row(reader, row, reader.line());
    }
}

}  // namespace detail

inline std::vector<StudyRecord> parse_studies(const std::string& path) {
    std::vector<StudyRecord> out;
    std::unordered_set<std::string> ids;
    auto add = [&](StudyRecord rec, std::size_t line) {
        if (rec.study_id.empty()) throw ParseError("empty study_id", line);
        if (!ids.insert(rec.study_id).second)
            throw ValidationError("duplicate study_id '" + rec.study_id + "'");
        rec.subject_terms = detail::dedup_keep_order(std::move(rec.subject_terms));
        out.push_back(std::move(rec));
    };
    detail::for_each_record(
        path,
        [&](const DelimitedReader& r, const std::vector<std::string>& row, std::size_t line) {
            static_cast<void>(r);
            StudyRecord rec;
            rec.study_id = row[r.column("study_id")];
            rec.title = row[r.column("title")];
            std::string series = row[r.column("series_id")];
            if (!series.empty()) rec.series_id = series;
            rec.release_date = row[r.column("release_date")];
            rec.subject_terms = split_list(row[r.column("subject_terms")]);
            rec.investigators = split_list(row[r.column("investigators")]);
            std::string restricted = row[r.column("restricted")];
            rec.is_restricted = restricted == "1" || restricted == "true";
            add(std::move(rec), line);
        },
        [&](const nlohmann::json& j, std::size_t line) {
            StudyRecord rec;
            rec.study_id = j.value("study_id", "");
            rec.title = j.value("title", "");
            if (j.contains("series_id") && !j.at("series_id").is_null()) {
                std::string series = j.at("series_id").get<std::string>();
                if (!series.empty()) rec.series_id = series;
            }
            rec.release_date = j.value("release_date", "");
            rec.subject_terms = detail::json_list(j, "subject_terms");
            rec.investigators = detail::json_list(j, "investigators");
            if (j.contains("restricted")) {
                const auto& v = j.at("restricted");
                rec.is_restricted = v.is_boolean() ? v.get<bool>() : v.get<int>() != 0;
            }
            add(std::move(rec), line);
        });
    return out;
}

inline std::vector<PublicationRecord> parse_publications(const std::string& path, IngestStats& stats) {
    std::vector<PublicationRecord> out;
    std::unordered_set<std::string> ids;
    auto add = [&](PublicationRecord rec, std::size_t line) {
        if (rec.publication_id.empty()) throw ParseError("empty publication_id", line);
        if (!ids.insert(rec.publication_id).second)
            throw ValidationError("duplicate publication_id '" + rec.publication_id + "'");
        rec.for_codes = detail::dedup_keep_order(std::move(rec.for_codes));
        if (rec.for_codes.empty()) ++stats.publications_without_fields;
        out.push_back(std::move(rec));
    };
    detail::for_each_record(
        path,
        [&](const DelimitedReader& r, const std::vector<std::string>& row, std::size_t line) {
            PublicationRecord rec;
            rec.publication_id = row[r.column("publication_id")];
            std::string year = trim(row[r.column("year")]);
            if (!year.empty()) rec.year = static_cast<int>(parse_long(year, line));
            bool known = true;
            rec.pub_type = parse_pub_type(row[r.column("type")], &known);
            if (!known) ++stats.unknown_pub_types;
            rec.for_codes = split_list(row[r.column("for_codes")]);
            add(std::move(rec), line);
        },
        [&](const nlohmann::json& j, std::size_t line) {
            PublicationRecord rec;
            rec.publication_id = j.value("publication_id", "");
            if (j.contains("year") && !j.at("year").is_null()) {
                if (j.at("year").is_string()) {
                    std::string y = j.at("year").get<std::string>();
                    if (!trim(y).empty()) rec.year = static_cast<int>(parse_long(trim(y), line));
                } else {
                    rec.year = j.at("year").get<int>();
                }
            }
            bool known = true;
            rec.pub_type = parse_pub_type(j.value("type", "other"), &known);
            if (!known) ++stats.unknown_pub_types;
            rec.for_codes = detail::json_list(j, "for_codes");
            add(std::move(rec), line);
        });
    return out;
}

/// Parse and cross-validate the corpus triple. Duplicate (publication, study)
/// rows collapse to one link and are tallied; an unresolvable id fails fast.
inline Corpus parse_corpus(const std::string& citations_path, const std::string& studies_path,
                           const std::string& publications_path) {
    Corpus corpus;
    corpus.studies = parse_studies(studies_path);
    corpus.publications = parse_publications(publications_path, corpus.stats);

    std::unordered_set<std::string> study_ids, pub_ids;
    for (const auto& s : corpus.studies) study_ids.insert(s.study_id);
    for (const auto& p : corpus.publications) pub_ids.insert(p.publication_id);

    std::set<std::pair<std::string, std::string>> seen;
    auto add = [&](std::string pub, std::string study, std::size_t line) {
        ++corpus.stats.citation_rows;
        if (!pub_ids.count(pub))
            throw ValidationError("citation row " + std::to_string(line) + " references unknown publication '" +
                                  pub + "'");
        if (!study_ids.count(study))
            throw ValidationError("citation row " + std::to_string(line) + " references unknown study '" + study +
                                  "'");
        if (!seen.emplace(pub, study).second) {
            ++corpus.stats.duplicate_links;
            return;
        }
        corpus.links.push_back({std::move(pub), std::move(study)});
    };
    detail::for_each_record(
        citations_path,
        [&](const DelimitedReader& r, const std::vector<std::string>& row, std::size_t line) {
            add(row[r.column("publication_id")], row[r.column("study_id")], line);
        },
        [&](const nlohmann::json& j, std::size_t line) {
            add(j.value("publication_id", ""), j.value("study_id", ""), line);
        });
    return corpus;
}

struct YearFilterResult {
    std::vector<CitationLink> links;
    std::size_t dropped = 0;
    std::size_t year_unknown = 0;  // links retained despite a missing year
};

/// Keep links whose publication year >= min_year; publications without a year
/// are retained and tallied. Idempotent; monotone in min_year.
inline YearFilterResult filter_by_year(const std::vector<CitationLink>& links,
                                       const std::vector<PublicationRecord>& publications, int min_year) {
    if (min_year < 0) throw InfeasibleError("min_year must be >= 0");
    std::unordered_map<std::string, std::optional<int>> year;
    for (const auto& p : publications) year[p.publication_id] = p.year;
    YearFilterResult out;
    for (const auto& link : links) {
        auto it = year.find(link.publication_id);
        std::optional<int> y = it == year.end() ? std::nullopt : it->second;
        if (!y.has_value()) {
            ++out.year_unknown;
            out.links.push_back(link);
        } else if (*y >= min_year) {
            out.links.push_back(link);
        } else {
            ++out.dropped;
        }
    }
    return out;
}

/// Group studies into datasets by series id; studies without a series stand
/// alone. Single-member series are still series.
inline DatasetIndex group_into_datasets(const std::vector<StudyRecord>& studies) {
    std::map<std::string, DatasetNode> by_id;
    DatasetIndex out;
    for (const auto& s : studies) {
        std::string id = s.series_id.value_or(s.study_id);
        DatasetNode& node = by_id[id];
        if (node.dataset_id.empty()) {
            node.dataset_id = id;
            node.kind = s.series_id ? DatasetKind::series : DatasetKind::standalone_study;
            node.display_name = s.series_id ? id : s.title;
        }
        node.member_study_ids.push_back(s.study_id);
        for (const auto& t : s.subject_terms) ++node.subject_terms[t];
        out.study_to_dataset[s.study_id] = id;
    }
    out.datasets.reserve(by_id.size());
    for (auto& [_, node] : by_id) {
        std::sort(node.member_study_ids.begin(), node.member_study_ids.end());
        out.datasets.push_back(std::move(node));
    }
    return out;
}

}  // namespace cocite
