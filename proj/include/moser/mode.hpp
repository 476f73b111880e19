#pragma once

namespace moser {

enum class Mode {
    aperiodic, ///< J absorbs diagonal terms; only mixed monomials are solved
    strong     ///< J stays omega x; every monomial is solved, decay required
};

} // namespace moser
