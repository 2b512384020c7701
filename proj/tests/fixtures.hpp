#pragma once

#include "uenv/linfty.hpp"

#include <string>
#include <vector>

namespace fixtures {

using uenv::Generator;
using uenv::GradedSpace;
using uenv::LinComb;
using uenv::LInftyAlgebra;

inline LInftyAlgebra abelian(std::vector<Generator> gens) { return LInftyAlgebra(GradedSpace(std::move(gens))); }

/// [e,f] = h, [h,e] = 2e, [h,f] = -2f in degree 0.
inline LInftyAlgebra sl2()
{
    LInftyAlgebra L(GradedSpace({{"e", 0}, {"f", 0}, {"h", 0}}));
    L.set_bracket({0, 1}, LinComb<int>(2));
    L.set_bracket({2, 0}, LinComb<int>(0, 2));
    L.set_bracket({2, 1}, LinComb<int>(1, -2));
    return L;
}

/// [x,y] = z central.
inline LInftyAlgebra heisenberg()
{
    LInftyAlgebra L(GradedSpace({{"x", 0}, {"y", 0}, {"z", 0}}));
    L.set_bracket({0, 1}, LinComb<int>(2));
    return L;
}

/// Only l_3(x,y,z) = w, with |w| = -1.
inline LInftyAlgebra l3only()
{
    LInftyAlgebra L(GradedSpace({{"x", 0}, {"y", 0}, {"z", 0}, {"w", -1}}));
    L.set_bracket({0, 1, 2}, LinComb<int>(3));
    return L;
}

/// Heisenberg bracket plus l_3(x,y,z) = w.
inline LInftyAlgebra t23()
{
    auto L = l3only();
    L.set_bracket({0, 1}, LinComb<int>(2));
    return L;
}

/// Generators a, b of degree 1 and c of degree 2 with l_2(a,b) = c, l_2(a,a) = 3c.
inline LInftyAlgebra mixed()
{
    LInftyAlgebra L(GradedSpace({{"a", 1}, {"b", 1}, {"c", 2}}));
    L.set_bracket({0, 1}, LinComb<int>(2));
    L.set_bracket({0, 0}, LinComb<int>(2, 3));
    return L;
}

inline LInftyAlgebra odd_one() { return abelian({{"a", 1}}); }
inline LInftyAlgebra odd_two() { return abelian({{"a", 1}, {"b", 3}}); }

/// A two-term complex a -> b (|a| = 0, |b| = 1).
inline LInftyAlgebra arrow()
{
    LInftyAlgebra V(GradedSpace({{"a", 0}, {"b", 1}}));
    V.set_bracket({0}, LinComb<int>(1));
    return V;
}

} // namespace fixtures
