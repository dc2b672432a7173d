#pragma once

#include "cfsem/exact_dist.hpp"
#include "cfsem/sem.hpp"

#include <string_view>

namespace cfsem {

/// Distribution query. Grammar (whitespace is insignificant):
///
///   query      = "P" "(" body ")" | body ;
///   body       = targets [ "|" conditions ] ;
///   targets    = label { "," label } ;
///   conditions = condition { "," condition } ;
///   condition  = "do" "(" setting { "," setting } ")" | setting ;
///   setting    = label "=" value ;
///
/// At most one do-clause. Examples: "P(Y|A=1,L=0)", "Y | do(A=1)",
/// "P(Y, L | do(A=0), L=1)".
struct Query {
  NodeSet targets;
  TextAssignment evidence;
  Intervention intervention;  // empty without a do-clause

  bool has_intervention() const { return !intervention.settings.empty(); }
};

// Throws ParseError whose column() is the 1-based offending position.
Query parse_query(std::string_view text);

// Marginal or conditional of the factual law, or of the law of M^a when the
// query carries a do-clause.
ProbTable evaluate_query(const SemModel& m, const Query& q, const EnumerationLimits& limits = {});

}  // namespace cfsem
