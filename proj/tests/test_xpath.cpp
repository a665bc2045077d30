#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "xpl/errors.hpp"
#include "xpl/xml.hpp"
#include "xpl/xpath.hpp"

using namespace xpl;

namespace {

class XPathFixture : public ::testing::Test {
 protected:
  xml::Document bib = xml::parse(testkit::read_fixture("bibitem.xml"));
  const xml::Node& root() const { return bib.root(); }

  bool holds(std::string_view filter) const { return xpath::eval_filter(*xpath::parse_filter(filter), root()); }

  std::vector<std::string> names(std::string_view path, const xml::Node* at = nullptr) const {
    std::vector<std::string> out;
    for (const xml::Node* n : xpath::eval_path(xpath::parse_path(path), at ? *at : root())) {
      out.push_back(n->is_text() ? "#text" : n->name());
    }
    return out;
  }
};

std::string canonical(std::string_view filter) { return xpath::to_string(*xpath::parse_filter(filter)); }

std::size_t syntax_column(std::string_view filter) {
  try {
    xpath::parse_filter(filter);
  } catch (const SyntaxError& e) {
    return e.column();
  }
  ADD_FAILURE() << "no SyntaxError for " << filter;
  return 0;
}

}  // namespace

TEST(XPathParse, BibitemFilterShape) {
  EXPECT_EQ(canonical(R"(count(author) = 1 and (year > 2007) and contains(abstract/em, "XML"))"),
            R"((((count(child::author) = 1) and (child::year > 2007)) and contains(child::abstract/child::em, "XML")))");
}

TEST(XPathParse, BarePathIsExistence) {
  xpath::FilterPtr f = xpath::parse_filter("title");
  ASSERT_TRUE(std::holds_alternative<xpath::Filter::Test>(f->node));
  EXPECT_EQ(xpath::to_string(*f), "child::title");
}

TEST(XPathParse, Precedence) {
  EXPECT_EQ(canonical("not(a) and b or c"), "((not(child::a) and child::b) or child::c)");
  EXPECT_EQ(canonical("a or b and c"), "(child::a or (child::b and child::c))");
}

TEST(XPathParse, Abbreviations) {
  EXPECT_EQ(canonical("@key"), "attribute::key");
  EXPECT_EQ(canonical("a//b"), "child::a/descendant-or-self::node()/child::b");
  EXPECT_EQ(canonical("//b"), "/descendant-or-self::node()/child::b");
  EXPECT_EQ(canonical(".."), "parent::node()");
  EXPECT_EQ(canonical("./x"), "self::node()/child::x");
  EXPECT_EQ(canonical("text()"), "child::text()");
  EXPECT_EQ(canonical("a[b = 'x'][2 > 1]/*"), R"(child::a[(child::b = "x")][(2 > 1)]/child::*)");
  EXPECT_EQ(canonical("following-sibling::x != preceding-sibling::y"),
            "(following-sibling::x != preceding-sibling::y)");
}

TEST(XPathParse, StructuralDedupIgnoresSpacing) {
  EXPECT_TRUE(xpath::structurally_equal(*xpath::parse_filter("a and b"), *xpath::parse_filter(" a   and b ")));
  EXPECT_TRUE(xpath::structurally_equal(*xpath::parse_filter("a = 'x'"), *xpath::parse_filter("child::a = \"x\"")));
  EXPECT_FALSE(xpath::structurally_equal(*xpath::parse_filter("a and b"), *xpath::parse_filter("b and a")));
}

TEST(XPathParse, Errors) {
  EXPECT_EQ(syntax_column("sideways::a"), 1u);
  EXPECT_EQ(syntax_column("(a and b"), 1u);
  EXPECT_EQ(syntax_column("a[b"), 2u);
  EXPECT_GT(syntax_column("a = \"x"), 0u);
  EXPECT_GT(syntax_column("a = 1.2.3"), 0u);
  EXPECT_GT(syntax_column("sum(a)"), 0u);
  EXPECT_GT(syntax_column(""), 0u);
  EXPECT_GT(syntax_column("a and"), 0u);
  EXPECT_GT(syntax_column("/a"), 0u);
  EXPECT_GT(syntax_column("a b"), 0u);
  EXPECT_GT(syntax_column("a = -"), 0u);
  EXPECT_GT(syntax_column("a = 1x"), 0u);
}

TEST_F(XPathFixture, PathsFromBibitem) {
  EXPECT_EQ(names("author"), (std::vector<std::string>{"author", "author"}));
  EXPECT_EQ(names("descendant::em"), (std::vector<std::string>{"em", "em"}));
  EXPECT_TRUE(names("parent::*").empty());
  EXPECT_EQ(names("author/middle"), (std::vector<std::string>{"middle"}));
  EXPECT_EQ(names("author[middle]/last"), (std::vector<std::string>{"last"}));
  EXPECT_EQ(names("year/following-sibling::*"), (std::vector<std::string>{"abstract"}));
  EXPECT_EQ(names("title/preceding-sibling::*"), (std::vector<std::string>{"author", "author"}));
  EXPECT_EQ(names("abstract/em/ancestor::*"), (std::vector<std::string>{"bibitem", "abstract"}));
  EXPECT_EQ(names("year/text()"), (std::vector<std::string>{"#text"}));
  EXPECT_EQ(names("@*"), (std::vector<std::string>{"key", "type"}));
  EXPECT_EQ(names("//first"), (std::vector<std::string>{"first", "first"}));
  // A number predicate is a truth test (nonzero), not a position.
  EXPECT_EQ(names("author[2]").size(), 2u);
  EXPECT_TRUE(names("author[0]").empty());
}

TEST_F(XPathFixture, DocumentOrderAndDedup) {
  // descendant-or-self then parent reaches the same nodes many times.
  auto items = xpath::eval_path(xpath::parse_path("descendant-or-self::*/parent::*"), root());
  EXPECT_TRUE(std::is_sorted(items.begin(), items.end(),
                             [](const xml::Node* a, const xml::Node* b) { return a->order() < b->order(); }));
  EXPECT_EQ(std::adjacent_find(items.begin(), items.end()), items.end());
  EXPECT_EQ(items.size(), 4u);  // bibitem, the two authors, abstract
}

TEST_F(XPathFixture, BibitemFilters) {
  EXPECT_FALSE(holds(R"(count(author) = 1 and (year > 2007) and contains(abstract/em, "XML"))"));
  EXPECT_TRUE(holds(R"(contains(abstract/em, "relational"))"));
  EXPECT_TRUE(holds("count(author) = 2 and year = 2005"));
}

TEST_F(XPathFixture, ComparisonSemantics) {
  EXPECT_TRUE(holds("author/last = \"Harold\""));    // existential over items
  EXPECT_TRUE(holds("author/last != \"Harold\""));   // ...in both directions
  EXPECT_FALSE(holds("nothing = \"x\""));
  EXPECT_FALSE(holds("nothing != \"x\""));
  EXPECT_TRUE(holds("year = \"2005\""));
  EXPECT_FALSE(holds("year = \"2005.0\""));           // string comparison
  EXPECT_TRUE(holds("year = 2005.0"));                // numeric comparison
  EXPECT_TRUE(holds("year >= 2005 and year <= 2005 and year < 2006"));
  EXPECT_TRUE(holds("count(author/*) = 5"));
  EXPECT_TRUE(holds("@key = 'FH05'"));
  EXPECT_TRUE(holds("author[first = 'Elliotte']/middle = 'Rusty'"));
  EXPECT_TRUE(holds("not(editor)"));
  EXPECT_TRUE(holds("contains(title, 'XPath')"));
  EXPECT_FALSE(holds("contains(nothing, '')"));
  EXPECT_TRUE(holds("contains(title, '')"));
  EXPECT_TRUE(holds("count(author)"));
  EXPECT_FALSE(holds("count(editor)"));
  EXPECT_TRUE(holds("'x'"));
  EXPECT_FALSE(holds("0"));
  EXPECT_TRUE(holds("pages = '156-172'"));
  EXPECT_TRUE(holds("contains(title, 'Modal') = contains(title, 'logic')"));
  EXPECT_TRUE(holds("2 > 1 and 1 = 1.0 and -1 < 0"));
}

TEST_F(XPathFixture, NumericCoercionFailures) {
  EXPECT_THROW(holds("title > 3"), TypeError);
  EXPECT_THROW(holds("pages = 156"), TypeError);
  EXPECT_THROW(holds("author/first < 1"), TypeError);
  EXPECT_THROW(holds("year < title"), TypeError);
  // No items means nothing to coerce.
  EXPECT_FALSE(holds("nothing > 3"));
}

TEST_F(XPathFixture, Properties) {
  testkit::Rng rng(7);
  std::vector<std::string> samples = {"author", "year > 2000", "contains(abstract, 'empire')",
                                      "editor", "count(author) = 2", "@type = 'article'"};
  for (const std::string& a : samples) {
    for (const std::string& b : samples) {
      bool lhs = holds("not((" + a + ") and (" + b + "))");
      bool rhs = holds("not(" + a + ") or not(" + b + ")");
      EXPECT_EQ(lhs, rhs) << a << " / " << b;
    }
  }
  for (const char* path : {"author", "descendant::*", "abstract/em", "nothing", "@*", "author/*"}) {
    std::size_t count = xpath::eval_path(xpath::parse_path(path), root()).size();
    EXPECT_EQ(holds("count(" + std::string(path) + ") = " + std::to_string(count)), true) << path;
    EXPECT_EQ(holds(path), count >= 1) << path;
    EXPECT_EQ(holds(path), holds(path)) << "purity";
  }
}

TEST(XPathDecimal, Parse) {
  double v = 0;
  EXPECT_TRUE(xpath::parse_decimal(" 2005 ", v));
  EXPECT_EQ(v, 2005);
  EXPECT_TRUE(xpath::parse_decimal("-1.5", v));
  EXPECT_EQ(v, -1.5);
  EXPECT_TRUE(xpath::parse_decimal(".5", v));
  EXPECT_EQ(v, 0.5);
  EXPECT_TRUE(xpath::parse_decimal("+3.", v));
  EXPECT_EQ(v, 3);
  for (const char* bad : {"", " ", "1e3", "0x10", "1.2.3", "abc", "1 2", "inf", "nan", "-", "."}) {
    EXPECT_FALSE(xpath::parse_decimal(bad, v)) << bad;
  }
}
