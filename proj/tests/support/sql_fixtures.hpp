// Copyright 2026 The GTR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <string_view>

#include "gtr/sql_eval.hpp"

namespace gtr::testing {

struct EmPair {
  std::string_view label;
  std::string_view pred;
  std::string_view gold;
  bool expected;
};

// Verdicts decided by hand against the toy concert schema.
inline constexpr std::array<EmPair, 40> kEmPairs = {{
    {"value: comparison", "SELECT name FROM singer WHERE age > 20", "SELECT name FROM singer WHERE age > 30", true},
    {"value: string", "SELECT name FROM singer WHERE country = 'France'",
     "SELECT name FROM singer WHERE country = \"Netherlands\"", true},
    {"value: between", "SELECT count(*) FROM singer WHERE age BETWEEN 20 AND 30",
     "SELECT count(*) FROM singer WHERE age BETWEEN 1 AND 99", true},
    {"value: like", "SELECT name FROM singer WHERE name LIKE '%a%'", "SELECT name FROM singer WHERE name LIKE 'J%'",
     true},
    {"value: limit", "SELECT name FROM singer ORDER BY age LIMIT 3", "SELECT name FROM singer ORDER BY age LIMIT 5",
     true},
    {"value: in list", "SELECT name FROM singer WHERE country IN ('France', 'USA')",
     "SELECT name FROM singer WHERE country IN ('Spain', 'Italy')", true},
    {"select: order", "SELECT name, age FROM singer", "SELECT age, name FROM singer", true},
    {"select: extra column", "SELECT name FROM singer", "SELECT name, age FROM singer", false},
    {"select: distinct", "SELECT DISTINCT country FROM singer", "SELECT country FROM singer", false},
    {"select: keyword case", "select COUNT(*) from SINGER", "SELECT count(*) FROM singer", true},
    {"select: aggregate order", "select avg(age), max(age) from singer", "SELECT max(age), avg(age) FROM singer",
     true},
    {"select: aggregate kind", "SELECT min(age) FROM singer", "SELECT max(age) FROM singer", false},
    {"alias: table", "SELECT T1.name FROM singer AS T1", "SELECT name FROM singer", true},
    {"alias: join", "SELECT T2.name FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id = T2.stadium_id",
     "SELECT stadium.name FROM concert JOIN stadium ON concert.stadium_id = stadium.stadium_id", true},
    {"alias: implicit", "SELECT s.name FROM singer s", "SELECT name FROM singer", true},
    {"alias: select alias", "SELECT count(*) AS cnt, country FROM singer GROUP BY country ORDER BY cnt DESC",
     "SELECT country, count(*) FROM singer GROUP BY country ORDER BY count(*) DESC", true},
    {"join: table order",
     "SELECT T1.name FROM stadium AS T1 JOIN concert AS T2 ON T1.stadium_id = T2.stadium_id",
     "SELECT T1.name FROM concert AS T2 JOIN stadium AS T1 ON T2.stadium_id = T1.stadium_id", true},
    {"join: different table", "SELECT T1.name FROM singer AS T1 JOIN concert AS T2 ON T1.singer_id = T2.singer_id",
     "SELECT T1.name FROM singer AS T1 JOIN stadium AS T2 ON T1.singer_id = T2.stadium_id", false},
    {"join: three way",
     "SELECT singer.name FROM singer JOIN concert ON singer.singer_id = concert.singer_id JOIN stadium ON "
     "concert.stadium_id = stadium.stadium_id",
     "SELECT T1.name FROM stadium AS T3 JOIN concert AS T2 ON T3.stadium_id = T2.stadium_id JOIN singer AS T1 ON "
     "T2.singer_id = T1.singer_id",
     true},
    {"join: missing", "SELECT name FROM singer",
     "SELECT singer.name FROM singer JOIN concert ON singer.singer_id = concert.singer_id", false},
    {"where: conjunct order", "SELECT name FROM singer WHERE age > 20 AND country = 'France'",
     "SELECT name FROM singer WHERE country = 'France' AND age > 20", true},
    {"where: and vs or", "SELECT name FROM singer WHERE age > 20 AND country = 'x'",
     "SELECT name FROM singer WHERE age > 20 OR country = 'x'", false},
    {"where: operator", "SELECT name FROM singer WHERE age > 20", "SELECT name FROM singer WHERE age < 20", false},
    {"where: not equal spellings", "SELECT name FROM singer WHERE age != 20",
     "SELECT name FROM singer WHERE age <> 30", true},
    {"where: equality sides", "SELECT name FROM singer WHERE name = 'x'",
     "SELECT name FROM singer WHERE 'x' = name", true},
    {"having: value", "SELECT country FROM singer GROUP BY country HAVING count(*) > 1",
     "SELECT country FROM singer GROUP BY country HAVING count(*) > 2", true},
    {"group by: column", "SELECT count(*) FROM singer GROUP BY country",
     "SELECT count(*) FROM singer GROUP BY name", false},
    {"order: direction", "SELECT name FROM singer ORDER BY age DESC", "SELECT name FROM singer ORDER BY age",
     false},
    {"order: explicit asc", "SELECT name FROM singer ORDER BY age ASC", "SELECT name FROM singer ORDER BY age",
     true},
    {"order: key order", "SELECT name FROM singer ORDER BY age, name", "SELECT name FROM singer ORDER BY name, age",
     false},
    {"order: limit flag", "SELECT name FROM singer ORDER BY age DESC LIMIT 1",
     "SELECT name FROM singer ORDER BY age DESC", false},
    {"nesting: aggregate", "SELECT name FROM singer WHERE age > (SELECT avg(age) FROM singer)",
     "SELECT name FROM singer WHERE age > (SELECT min(age) FROM singer)", false},
    {"nesting: alias inside", "SELECT name FROM singer WHERE singer_id NOT IN (SELECT singer_id FROM concert)",
     "SELECT name FROM singer WHERE singer_id NOT IN (SELECT T1.singer_id FROM concert AS T1)", true},
    {"nesting: value inside",
     "SELECT name FROM singer WHERE singer_id IN (SELECT singer_id FROM concert WHERE year = 2014)",
     "SELECT name FROM singer WHERE singer_id IN (SELECT singer_id FROM concert WHERE year = 2015)", true},
    {"nesting: negation", "SELECT name FROM singer WHERE singer_id IN (SELECT singer_id FROM concert)",
     "SELECT name FROM singer WHERE singer_id NOT IN (SELECT singer_id FROM concert)", false},
    {"set op: values",
     "SELECT name FROM singer WHERE age > 40 UNION SELECT name FROM singer WHERE country = 'France'",
     "SELECT name FROM singer WHERE age > 50 UNION SELECT name FROM singer WHERE country = 'Spain'", true},
    {"set op: kind", "SELECT name FROM singer WHERE age > 40 UNION SELECT name FROM singer WHERE age < 30",
     "SELECT name FROM singer WHERE age > 40 INTERSECT SELECT name FROM singer WHERE age < 30", false},
    {"set op: operand order", "SELECT name FROM singer WHERE age > 40 EXCEPT SELECT name FROM singer WHERE is_male = 'T'",
     "SELECT name FROM singer WHERE is_male = 'T' EXCEPT SELECT name FROM singer WHERE age > 40", false},
    {"set op: missing", "SELECT name FROM singer WHERE age > 40",
     "SELECT name FROM singer WHERE age > 40 UNION SELECT name FROM singer WHERE age < 30", false},
    {"from: derived alias",
     "SELECT avg(t.c) FROM (SELECT count(*) AS c FROM concert GROUP BY stadium_id) AS t",
     "SELECT avg(x.c) FROM (SELECT count(*) AS c FROM concert GROUP BY stadium_id) AS x", true},
}};

struct HardnessFixture {
  std::string_view sql;
  HardnessLevel expected;
};

// Levels derived by hand from the component counts; see docs/hardness.md.
inline constexpr std::array<HardnessFixture, 14> kHardnessFixtures = {{
    {"SELECT name FROM singer", HardnessLevel::kEasy},
    {"SELECT count(*) FROM singer", HardnessLevel::kEasy},
    {"SELECT name FROM singer WHERE age > 30", HardnessLevel::kEasy},
    {"SELECT DISTINCT country FROM singer", HardnessLevel::kEasy},
    {"SELECT T2.name FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id = T2.stadium_id WHERE T1.year = 2014",
     HardnessLevel::kMedium},
    {"SELECT name, age FROM singer ORDER BY age DESC", HardnessLevel::kMedium},
    {"SELECT country, count(*) FROM singer GROUP BY country", HardnessLevel::kMedium},
    {"SELECT name FROM singer WHERE age > (SELECT avg(age) FROM singer)", HardnessLevel::kHard},
    {"SELECT name FROM singer WHERE age > 20 ORDER BY age DESC LIMIT 3", HardnessLevel::kHard},
    {"SELECT country, avg(age), max(age) FROM singer WHERE age > 20 AND is_male = 'T' GROUP BY country",
     HardnessLevel::kHard},
    {"SELECT name FROM singer WHERE name LIKE '%a%' OR age > 30", HardnessLevel::kHard},
    {"SELECT name FROM singer WHERE singer_id IN (SELECT singer_id FROM concert) UNION SELECT name FROM singer "
     "WHERE age > 40",
     HardnessLevel::kExtra},
    {"SELECT name, country, age FROM singer WHERE age > 20 AND country = 'France' ORDER BY age",
     HardnessLevel::kExtra},
    {"SELECT T1.name FROM singer AS T1 JOIN concert AS T2 ON T1.singer_id = T2.singer_id JOIN stadium AS T3 ON "
     "T2.stadium_id = T3.stadium_id WHERE T3.capacity > 5000 OR T2.year = 2014",
     HardnessLevel::kExtra},
}};

// Extra parser coverage beyond the pairs above.
inline constexpr std::array<std::string_view, 16> kExtraCorpus = {{
    "SELECT count(DISTINCT country) FROM singer",
    "SELECT name FROM singer WHERE song_name IS NULL",
    "SELECT name FROM singer WHERE song_name IS NOT NULL AND age >= 18",
    "SELECT name FROM singer WHERE NOT (age < 20 OR age > 60)",
    "SELECT name FROM singer WHERE age NOT BETWEEN 20 AND 30",
    "SELECT name FROM singer WHERE name NOT LIKE 'J%'",
    "SELECT name FROM singer WHERE EXISTS (SELECT 1 FROM concert WHERE concert.singer_id = singer.singer_id)",
    "SELECT capacity - average, highest * 2 FROM stadium ORDER BY capacity - average DESC",
    "SELECT -age FROM singer WHERE age > -1",
    "SELECT T1.name, count(*) FROM singer AS T1 JOIN concert AS T2 ON T1.singer_id = T2.singer_id GROUP BY "
    "T1.singer_id HAVING count(*) >= 2 ORDER BY count(*) DESC LIMIT 1",
    "SELECT name FROM stadium UNION ALL SELECT name FROM singer",
    "SELECT T1.* FROM singer AS T1",
    "SELECT name FROM singer WHERE (age > 20 AND country = 'France') OR (age < 10 AND is_male = 'F')",
    "SELECT a.name FROM singer AS a JOIN singer AS b ON a.age = b.age WHERE a.singer_id != b.singer_id",
    "SELECT `name`, \"x\" FROM singer WHERE country = 'It''s'",
    "SELECT name FROM singer JOIN concert USING (singer_id)",
}};

}  // namespace gtr::testing
