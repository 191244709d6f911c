#include "spin7/examples.hpp"

namespace spin7 {

Form product_class() { return dz_word({1, 2, -1, -2}); }

Form weil_class() { return dz_word({1, 2, -3, -4}) + dz_word({-1, -2, 3, 4}); }

Form alfa_class() {
    Form w(2);
    for (int j = 1; j <= 4; ++j) w += Form::dx({2 * j - 1, 2 * j});
    return weil_class() + wedge(w, w);
}

Form diagonal_class() {
    Form d = Form::constant(1);
    for (int j = 1; j <= 4; ++j) d = wedge(d, Form::dx({j}) - Form::dx({j + 4}));
    return d;
}

}  // namespace spin7
