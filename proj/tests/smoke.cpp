#include <cassert>
#include <iostream>
#include "pingpong/pingpong.hpp"
using namespace pingpong;
int main() {
    Model f2 = Model::free_group(2);
    GroupElement ab = f2.parse("ab");
    Site v0 = f2.basepoint();
    assert(tree_distance(f2, v0, f2.act(ab, v0)) == 2);
    assert(translation_length(f2, ab) == Dist::exact(2));
    auto ends = fixed_ends(f2, ab);
    std::cout << "ab+ = " << print_end(f2, ends.first) << "  ab- = " << print_end(f2, ends.second) << "\n";

    Model psl = Model::free_product({2, 3});
    GroupElement st = psl.parse("st");
    assert(translation_length(psl, st) == Dist::exact(2));
    assert(translation_length(psl, psl.parse("s")) == Dist::exact(0));
    auto stends = fixed_ends(psl, st);
    std::cout << "st+ = " << print_end(psl, stends.first) << "  st- = " << print_end(psl, stends.second) << "\n";

    // matrix oracle
    assert(psl.matrix_eval(psl.parse("s^2")).is_projective_identity());
    assert(psl.matrix_eval(psl.parse("t^3")).is_projective_identity());
    assert(!psl.matrix_eval(st).is_projective_identity());

    // pipeline end to end
    PipelineParams params;
    params.region_radius = 6;
    std::vector<std::vector<GroupElement>> subs{{psl.parse("s")}, {psl.parse("t")}};
    PipelineResult res = pnaive_pipeline(psl, subs, params);
    std::cout << "gamma = " << psl.print(res.partner.gamma) << " N = " << res.partner.power_N
              << " Delta = " << res.partner.Delta.str() << " C = " << res.partner.C.str() << "\n";
    for (auto& c : res.certificates)
        std::cout << "certificate: " << (c.status == CertStatus::Pass ? "pass" : "FAIL")
                  << " words=" << c.words_checked << "\n";
    std::cout << "smoke ok\n";
    return 0;
}
