#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xpl/ctl.hpp"
#include "xpl/errors.hpp"
#include "xpl/formula.hpp"
#include "xpl/network.hpp"
#include "xpl/xpath.hpp"

// XPL: CTL formulas whose atoms are XPath filters over node payloads, checked
// by labelling nodes with one proposition per distinct filter and handing the
// resulting pure CTL formula to the CTL checker.
namespace xpl::logic {

using XplFormula = Formula<xpath::FilterPtr>;

// Surface syntax:
//
//   xpl := "EU" "(" xpl "," xpl ")" | "AU" ... | "IEU" ... | "IAU" ...
//        | ("EX"|"AX"|"EF"|"AF"|"EG"|"AG"|"IEX"|...|"IAG") xpl
//        | xpl "&" xpl | xpl "|" xpl | "!" xpl | "(" xpl ")"
//        | "true" | "false" | "[" filter "]"
//
// Quantifiers and `!` bind tightest, then `&`, then `|`. Throws SyntaxError;
// errors inside a filter are reported at their column in `text`.
XplFormula parse_xpl(std::string_view text);

std::string to_string(const XplFormula& formula);

// A filter failed to evaluate on some node's payload.
class FilterEvaluationError : public TypeError {
 public:
  FilterEvaluationError(const std::string& key, const std::string& filter, const std::string& reason)
      : TypeError("node '" + key + "': filter [" + filter + "]: " + reason), key_(key), filter_(filter) {}
  const std::string& key() const noexcept { return key_; }
  const std::string& filter() const noexcept { return filter_; }

 private:
  std::string key_;
  std::string filter_;
};

// Bijection between structurally distinct filters and generated propositions
// p1, p2, ... numbered by first occurrence.
class FilterRegistry {
 public:
  struct Entry {
    ctl::PropId prop;
    xpath::FilterPtr filter;
    std::string canonical;
  };

  // Returns the proposition for `filter`, registering it if new.
  const ctl::PropId& intern(const xpath::FilterPtr& filter);
  // Throws MissingFilter.
  const ctl::PropId& prop_of(const xpath::Filter& filter) const;
  bool contains(const xpath::Filter& filter) const;

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> by_canonical_;
};

// Registry of every distinct filter in `formula`, in pre-order.
FilterRegistry collect_filters(const XplFormula& formula);

// Nodes whose payload satisfies `filter`: the `/network/node[F]` query.
// `parallelism` > 1 splits the nodes over that many threads; results and
// errors are identical to the sequential run.
ctl::SatSet query(const net::Network& net, const xpath::Filter& filter, unsigned parallelism = 1);

struct Labelling {
  ctl::LabelMap labels;
  FilterRegistry registry;
};

// Query evaluation step: one pass per distinct filter over all nodes, giving
// every satisfying node that filter's proposition. Throws
// FilterEvaluationError.
Labelling label_step(const net::Network& net, const XplFormula& formula, unsigned parallelism = 1);

// Formula replacement step: each filter atom becomes its proposition. Length
// is preserved. Throws MissingFilter.
ctl::CtlFormula replace_step(const XplFormula& formula, const FilterRegistry& registry);

// The full pipeline: label, replace, model check.
ctl::SatSet check(const net::Network& net, const XplFormula& formula, unsigned parallelism = 1);

}  // namespace xpl::logic
