#pragma once

#include <map>
#include <string>
#include <vector>

namespace revchar::testing {

struct EqualityCase {
  std::string check;  // parse_check text
  std::map<std::string, double> params;
};

// At least two equality-family settings per non-suspect theorem.
inline const std::vector<EqualityCase>& equality_cases() {
  static const std::vector<EqualityCase> cases = {
      {"T2_1", {{"gamma", 1}, {"b", 0}}},
      {"T2_1", {{"gamma", 2.5}, {"b", 3}}},
      {"T2_2", {{"b", 1}, {"c", 2}}},
      {"T2_2", {{"b", 2}, {"c", 0.5}}},
      {"T2_4:k=2", {{"theta", 1}}},
      {"T2_4:k=2", {{"theta", 2}}},
      {"T2_4:k=3", {{"theta", 1}}},
      {"T2_5", {{"alpha", 1}, {"b", 0}}},
      {"T2_5", {{"alpha", 0.5}, {"b", 2}}},
      {"T2_6:a=2", {{"theta", 1}, {"b", 0}}},
      {"T2_6:a=3", {{"theta", 0.5}, {"b", 1}}},
      {"T2_7", {{"gamma", 1}, {"b", 2}}},
      {"T2_7", {{"gamma", 1}, {"b", 0}}},
      {"T2_7", {{"gamma", 2}, {"b", 1}}},
      {"T2_8:k=2", {{"gamma", 1}, {"b", 0}}},
      {"T2_8:k=2", {{"gamma", 2}, {"b", 1}}},
      {"T2_8:k=1", {{"gamma", 1}, {"b", 2}}},
      {"T2_9", {{"theta", 0.5}}},
      {"T2_9", {{"theta", 2}}},
      {"T2_10:k=3", {{"theta", 0.5}}},
      {"T2_10:k=3", {{"theta", 1}}},
      {"T2_10:k=1", {{"theta", 1}}},
      {"T3_1", {{"gamma", 1}, {"b", 0}}},
      {"T3_1", {{"gamma", 2.5}, {"b", 3}}},
      {"T3_4", {{"xi", 1}, {"beta", 0.5}, {"b", 1}}},
      {"T3_4", {{"xi", 0.5}, {"beta", 1}, {"b", 2}}},
      {"T3_5", {{"xi", 1}, {"b", 0}}},
      {"T3_5", {{"xi", 2}, {"b", 1}}},
      {"T3_5:alpha=1,beta=0", {{"xi", 1}, {"b", 0}}},
      {"T3_5:alpha=1,beta=0.5", {{"xi", 1}, {"b", 1}}},
      {"T4_1", {{"mu", 1}, {"b", 2}}},
      {"T4_1", {{"gamma", 2}, {"b", 0}}},
      {"T4_2:k=1", {{"gamma", 1}, {"b", 0}}},
      {"T4_2:k=1", {{"gamma", 2}, {"b", 1}}},
      {"T4_2:k=2", {{"gamma", 1}, {"b", 2}}},
      {"T4_3", {{"gamma", 1}, {"b", 0}}},
      {"T4_3", {{"gamma", 0.5}, {"b", 2}}},
      {"T4_4:k=1", {{"gamma", 1}, {"b", 0}}},
      {"T4_4:k=1", {{"gamma", 2}, {"b", 1}}},
  };
  return cases;
}

struct StrictPair {
  std::string check;
  std::string family;  // FamilySpec text form
};

// Non-matching pairs whose integrals converge and whose inequality runs in
// the printed (>=) direction.
inline const std::vector<StrictPair>& strict_pairs() {
  static const std::vector<StrictPair> pairs = {
      {"T2_1", "power:b=1,c=2"},
      {"T2_1", "truncevpower:alpha=1,b=0"},
      {"T2_1", "reflectedweibull:theta=0.5,k=1"},
      {"T2_1", "linearmit:xi=1,alpha=1,beta=-0.5,b=0"},
      {"T2_1", "explinkedeit:theta=1,b=0"},
      {"T2_1", "basealinkedeit:gamma=1,delta=1,a=2,b=0"},
      {"T2_2", "finiterange:theta=0.5,b=1,k=1"},
      {"T2_4:k=2", "power:b=1,c=2"},
      {"T2_5", "power:b=1,c=2"},
      {"T2_5", "basealinkedrhr:theta=1,a=2,b=0"},
      {"T2_5", "reflectedweibull:theta=0.5,k=1"},
      {"T2_6:a=2", "type3ev:gamma=1,b=0"},
      {"T2_6:a=2", "power:b=1,c=2"},
      {"T2_6:a=2", "truncevpower:alpha=1,b=0"},
      {"T2_6:a=2", "explinkedeit:theta=1,b=0"},
      {"T2_7", "power:b=1,c=2"},
      {"T2_7", "finiterange:theta=0.5,b=1,k=1"},
      {"T2_7", "uniform:b=1"},
      {"T2_8:k=2", "power:b=1,c=2"},
      {"T2_8:k=2", "truncevpower:alpha=1,b=0"},
      {"T2_8:k=2", "reflectedweibull:theta=0.5,k=1"},
      {"T2_8:k=2", "finiterange:theta=0.5,b=1,k=1"},
      {"T2_8:k=2", "explinkedeit:theta=1,b=0"},
      {"T2_8:k=2", "uniform:b=1"},
      {"T3_1", "power:b=1,c=2"},
      {"T3_1", "truncevpower:alpha=1,b=0"},
      {"T3_1", "reflectedweibull:theta=0.5,k=1"},
      {"T3_1", "linearmit:xi=1,alpha=1,beta=-0.5,b=0"},
      {"T3_1", "explinkedeit:theta=1,b=0"},
      {"T3_4", "invweibull:nu=1,delta=1"},
      {"T3_4", "reflectedweibull:theta=0.5,k=1"},
      {"T3_5", "type3ev:gamma=1,b=0"},
      {"T3_5", "power:b=1,c=2"},
      {"T3_5", "explinkedeit:theta=1,b=0"},
      {"T4_1", "truncevpower:alpha=1,b=0"},
      {"T4_1", "linearmit:xi=1,alpha=1,beta=-0.5,b=0"},
      {"T4_1", "explinkedeit:theta=1,b=0"},
      {"T4_2:k=1", "power:b=1,c=2"},
      {"T4_2:k=1", "reflectedweibull:theta=0.5,k=1"},
      {"T4_3", "power:b=1,c=2"},
      {"T4_3", "finiterange:theta=0.5,b=1,k=1"},
      {"T4_3", "uniform:b=1"},
      {"T4_4:k=1", "power:b=1,c=2"},
      {"T4_4:k=1", "linearmit:xi=1,alpha=1,beta=-0.5,b=0"},
      {"T4_4:k=1", "uniform:b=1"},
  };
  return pairs;
}

// The printed equality families of the suspect theorems.
inline const std::vector<StrictPair>& suspect_printed_pairs() {
  static const std::vector<StrictPair> pairs = {
      {"T3_2", "finiterange:theta=0.5,b=1,k=1"},
      {"T3_3:k=2", "finiterange:theta=0.5,b=1,k=2"},
      {"T3_6", "explinkedeit:theta=1,b=0"},
      {"T3_7:a=2", "basealinkedeit:gamma=1,delta=1,a=2,b=0"},
  };
  return pairs;
}

}  // namespace revchar::testing
