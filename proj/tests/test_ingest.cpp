#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "mythforge/error.hpp"
#include "mythforge/ingest.hpp"
#include "support.hpp"

using namespace mythforge;
using namespace mythforge::ingest;

TEST(Csv, QuotedFieldsAndLineEndings) {
  auto rows = read_csv("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\r\nx,\"multi\nline\",\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b,c", "say \"hi\""}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"x", "multi\nline", ""}));
}

TEST(Csv, UnterminatedQuoteIsAnError) {
  EXPECT_THROW(read_csv("a,\"b\n"), Error);
}

TEST(Csv, RoundTrip) {
  gen::Rng rng(29);
  const std::vector<std::string> pieces{"a", ",", "\"", "\n", "\r\n", " ", "é", ";", "Pittura"};
  for (int i = 0; i < 300; ++i) {
    std::vector<std::vector<std::string>> rows;
    std::size_t width = 1 + gen::pick(rng, 5);
    std::size_t height = 1 + gen::pick(rng, 6);
    for (std::size_t r = 0; r < height; ++r) {
      std::vector<std::string> row;
      for (std::size_t c = 0; c < width; ++c) {
        std::string cell;
        std::size_t n = gen::pick(rng, 5);
        for (std::size_t k = 0; k < n; ++k) cell += gen::one_of(rng, pieces);
        row.push_back(cell);
      }
      // A lone empty cell would be a blank line, which the reader skips.
      if (width == 1 && row[0].empty()) row[0] = "x";
      rows.push_back(row);
    }
    EXPECT_EQ(read_csv(write_csv(rows)), rows);
  }
}

TEST(Mapping, LoadsFixtureMapping) {
  auto m = ColumnMapping::load(testsupport::data_dir() / "mapping.json");
  EXPECT_EQ(m.fields.at("typology_raw"), "Tipologia");
  EXPECT_EQ(m.other_sources.at(SourceType::FonteMedievaleOModerna), "Fonte medievale o moderna");
  EXPECT_EQ(m.delimiter, ";");
}

TEST(Mapping, MissingRequiredFieldIsSchemaError) {
  EXPECT_THROW(ColumnMapping::from_json_text(R"({"fields": {"title": "T"}})"), SchemaError);
  EXPECT_THROW(ColumnMapping::from_json_text("not json"), Error);
}

TEST(Table, Item284FixtureRow) {
  auto m = ColumnMapping::load(testsupport::data_dir() / "mapping.json");
  auto recs = parse_table(testsupport::fixture_dir("item284") / "records.csv", m);
  ASSERT_EQ(recs.size(), 1u);
  const auto& r = recs[0];
  EXPECT_EQ(r.item_id, "284");
  EXPECT_EQ(r.typology_raw, R"(a:1:{i:0;s:17:"Pittura vascolare";})");
  EXPECT_EQ(r.theme_raw, "medea-figlicida:Medea figlicida");
  EXPECT_EQ(r.interpreter_raw, "Gamba Hubert");
  EXPECT_EQ(r.classical_sources_raw, (std::vector<std::string>{"Eneide, IV, 337-396"}));
  ASSERT_EQ(r.other_sources_raw.size(), 1u);
  EXPECT_EQ(r.other_sources_raw[0].first, SourceType::FonteMedievaleOModerna);
  EXPECT_EQ(r.other_sources_raw[0].second, "Dante, Divina Commedia");
}

TEST(Table, MissingColumnIsSchemaError) {
  auto m = ColumnMapping::identity();
  EXPECT_THROW(parse_table_text("title,theme_raw\nx,y\n", m), SchemaError);
}

TEST(Table, RaggedRowIsRowError) {
  auto m = ColumnMapping::load(testsupport::data_dir() / "mapping.json");
  auto csv = text::read_file((testsupport::fixture_dir("item284") / "records.csv").string());
  auto text = csv.substr(0, csv.find('\n') + 1) + "284,only-two\n";
  try {
    parse_table_text(text, m);
    FAIL() << "expected RowError";
  } catch (const RowError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
}

TEST(Table, ItemIdFallsBackToRowIndex) {
  RawRecord r;
  EXPECT_EQ(assign_item_id(r, 7), "7");
  r.item_id = "284";
  EXPECT_EQ(assign_item_id(r, 7), "284");
}

TEST(Table, WriteParseRoundTrip) {
  gen::Rng rng(31);
  auto m = ColumnMapping::identity();
  const std::vector<std::string> values{"", "Pittura", "a, b", "say \"x\"", "multi\nline", "Médée"};
  for (int i = 0; i < 100; ++i) {
    std::vector<RawRecord> recs;
    std::size_t n = 1 + gen::pick(rng, 4);
    for (std::size_t k = 0; k < n; ++k) {
      RawRecord r;
      r.item_id = std::to_string(100 + k);
      r.title = gen::one_of(rng, values);
      r.typology_raw = gen::one_of(rng, values);
      r.theme_raw = gen::one_of(rng, values);
      r.artwork_author_raw = gen::one_of(rng, values);
      r.interpreter_raw = gen::one_of(rng, values);
      r.century_raw = gen::one_of(rng, values);
      r.year_raw = gen::one_of(rng, values);
      r.interpretation_date_raw = gen::one_of(rng, values);
      r.location_raw = gen::one_of(rng, values);
      r.keywords_raw = gen::one_of(rng, values);
      r.description = gen::one_of(rng, values);
      r.image_url = gen::one_of(rng, values);
      r.see_also = gen::one_of(rng, values);
      for (std::size_t c = gen::pick(rng, 3); c > 0; --c) {
        auto v = gen::one_of(rng, values);
        if (!v.empty()) r.classical_sources_raw.push_back(v);
      }
      for (auto t : kAllSourceTypes) {
        if (t == SourceType::FonteClassica) continue;
        if (gen::coin(rng, 0.3)) r.other_sources_raw.emplace_back(t, "Dante, Divina Commedia");
      }
      recs.push_back(std::move(r));
    }
    auto text = write_table(recs, m);
    EXPECT_EQ(parse_table_text(text, m), recs);
  }
}
