#include <doctest.h>

#include "hazardscan/corpus.hpp"
#include "hazardscan/error.hpp"
#include "oracles.hpp"

#include <random>
#include <sstream>

using namespace hazard;

namespace {

Corpus read_reviews(const std::string& text) {
    std::istringstream in(text);
    return read_corpus(in, CorpusKind::unlabeled, "reviews.jsonl");
}

} // namespace

TEST_SUITE("corpus") {

TEST_CASE("three review lines load in file order") {
    const auto c = read_reviews(R"({"id":"r1","text":"great stroller","star_rating":5,"date":"2012-01-02","product_id":"p1"}
{"id":"r2","text":"wheel fell off","star_rating":1}
{"id":"r3","text":"ok","star_rating":3,"product_id":"p2"}
)");
    REQUIRE(c.size() == 3);
    CHECK(c.kind == CorpusKind::unlabeled);
    CHECK(c.documents[0].id == "r1");
    CHECK(c.documents[0].date == Date(2012, 1, 2));
    CHECK(c.documents[1].star_rating == 1);
    CHECK_FALSE(c.documents[1].product_id.has_value());
    CHECK(c.documents[2].product_id == "p2");
}

TEST_CASE("empty input is an empty corpus, not an error") {
    CHECK(read_reviews("").empty());
    CHECK(read_reviews("\n  \n").empty());
}

TEST_CASE("star_rating outside 1..5 names the line and field") {
    try {
        read_reviews("{\"id\":\"a\",\"text\":\"x\",\"star_rating\":4}\n{\"id\":\"b\",\"text\":\"y\",\"star_rating\":6}\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.field() == "star_rating");
        CHECK(std::string(e.what()).find("star_rating") != std::string::npos);
    }
}

TEST_CASE("record errors") {
    CHECK_THROWS_AS(read_reviews(R"({"id":"a","text":"   "})"), ParseError);
    CHECK_THROWS_AS(read_reviews(R"({"id":"a"})"), ParseError);
    CHECK_THROWS_AS(read_reviews(R"({"id":"a","text":"x","date":"2012-13-40"})"), ParseError);
    CHECK_THROWS_AS(read_reviews("not json"), ParseError);
    CHECK_THROWS_AS(read_reviews("[1,2]"), ParseError);

    SUBCASE("duplicate id") {
        try {
            read_reviews("{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n");
            FAIL("expected a duplicate-id error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.field() == "id");
        }
    }
    SUBCASE("complaints cannot carry a rating") {
        std::istringstream in(R"({"id":"c","text":"it caught fire","star_rating":1})");
        CHECK_THROWS_AS(read_corpus(in, CorpusKind::positive_labeled), ParseError);
    }
}

TEST_CASE("complaints load as positive-labeled complaint documents") {
    std::istringstream in(R"({"id":"c1","text":"the crib slat broke","date":"2011-05-06"})");
    const auto c = read_corpus(in, CorpusKind::positive_labeled);
    REQUIRE(c.size() == 1);
    CHECK(c.kind == CorpusKind::positive_labeled);
    CHECK(c.documents[0].source == Source::complaint);
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("missing optional fields stay distinct from empty strings") {
    const auto c = read_reviews(R"({"id":"a","text":"x","product_id":""}
{"id":"b","text":"y"})");
    CHECK(c.documents[0].product_id == std::string{});
    CHECK_FALSE(c.documents[1].product_id.has_value());
}

TEST_CASE("write then read reproduces random corpora") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 20; ++round) {
        Corpus c;
        c.kind = CorpusKind::unlabeled;
        std::uniform_int_distribution<int> n(0, 12), rating(0, 5), len(1, 12), ch(32, 126);
        const int docs = n(rng);
        for (int i = 0; i < docs; ++i) {
            Document d;
            d.id = "id" + std::to_string(i);
            std::string text = "t";
            for (int j = len(rng); j > 0; --j) text.push_back(static_cast<char>(ch(rng)));
            d.text = text + "é\"\\";
            if (int r = rating(rng); r > 0) d.star_rating = r;
            if (rng() % 2) d.date = Date(2000 + static_cast<int>(rng() % 20), 1 + static_cast<unsigned>(rng() % 12), 1 + static_cast<unsigned>(rng() % 28));
            if (rng() % 2) d.product_id = "p" + std::to_string(rng() % 100);
            c.documents.push_back(d);
        }
        std::stringstream buf;
        write_corpus(buf, c);
        CHECK(read_corpus(buf, CorpusKind::unlabeled) == c);
    }
}

TEST_CASE("recall records") {
    std::istringstream in(
        R"({"recall_id":"12-225","recall_date":"2012-07-24","title":"Kolcraft Recalls Contours Tandem Strollers","reason":"fall hazard"})");
    const auto recalls = read_recalls(in);
    REQUIRE(recalls.size() == 1);
    CHECK(recalls[0].recall_date == Date(2012, 7, 24));
    CHECK(recalls[0].title == "Kolcraft Recalls Contours Tandem Strollers");

    std::istringstream empty("");
    CHECK(read_recalls(empty).empty());

    std::istringstream bad_date(R"({"recall_id":"x","recall_date":"2012-13-40","title":"t"})");
    CHECK_THROWS_AS(read_recalls(bad_date), ParseError);
    std::istringstream no_title(R"({"recall_id":"x","recall_date":"2012-01-01","title":" "})");
    CHECK_THROWS_AS(read_recalls(no_title), ParseError);

    std::stringstream round;
    write_recalls(round, recalls);
    CHECK(read_recalls(round) == recalls);
}

} // TEST_SUITE

TEST_SUITE("date") {

TEST_CASE("parse accepts only real ISO dates") {
    CHECK(Date::parse("2012-07-24") == Date(2012, 7, 24));
    CHECK(Date::parse("2012-02-29").has_value());
    CHECK_FALSE(Date::parse("2013-02-29").has_value());
    CHECK_FALSE(Date::parse("2012-13-40").has_value());
    CHECK_FALSE(Date::parse("2012-7-24").has_value());
    CHECK_FALSE(Date::parse("2012/07/24").has_value());
    CHECK_FALSE(Date::parse("+012-07-24").has_value());
    CHECK(Date(2012, 7, 24).iso() == "2012-07-24");
}

TEST_CASE("offsets agree with the civil-day oracle") {
    CHECK(offset_days(Date(2010, 12, 10), Date(2012, 7, 24)) == -592);
    CHECK(offset_days(Date(2013, 4, 30), Date(2014, 6, 4)) == -400);
    CHECK(offset_days(Date(2014, 6, 4), Date(2014, 6, 4)) == 0);
    // one Gregorian cycle is 146097 days
    CHECK(offset_days(Date(2400, 1, 1), Date(2000, 1, 1)) == 146097);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> year(1600, 2399), month(1, 12), day(1, 28);
    for (int i = 0; i < 2000; ++i) {
        const int y1 = year(rng), y2 = year(rng);
        const unsigned m1 = static_cast<unsigned>(month(rng)), m2 = static_cast<unsigned>(month(rng));
        const unsigned d1 = static_cast<unsigned>(day(rng)), d2 = static_cast<unsigned>(day(rng));
        const Date a(y1, m1, d1), b(y2, m2, d2);
        CHECK(offset_days(a, b) == oracle::days_from_civil(y1, m1, d1) - oracle::days_from_civil(y2, m2, d2));
        CHECK(offset_days(a, b) == -offset_days(b, a));
        CHECK(offset_days(a, a) == 0);
        CHECK(Date::parse(a.iso()) == a);
    }
}

} // TEST_SUITE
