#include <iostream>

#include "ppt/dsl.hpp"
#include "ppt/heegaard.hpp"
#include "ppt/json_io.hpp"
#include "ppt/knot_width.hpp"

int main() {
    auto p = ppt::parse_presentation("min c1 in f0 new f1\nmax c1\n", "ball");
    auto plan = ppt::plan_reimbedding(p);
    if (!ppt::verify_plan(p, plan).pass) return 1;
    if (ppt::width(ppt::KnotWord::parse("mmMM")) != 8) return 1;
    std::cout << ppt::json(plan.terminal).dump() << '\n';
    return 0;
}
