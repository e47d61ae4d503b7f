// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace upsilon::detail {

// Where a subexpression is printed; decides parenthesisation.
enum class PrintContext { Top, AppLeft, AppRight, ClosureHead, SlashBody, SuccArg };

// Constructors whose printed form is not self-delimiting.
enum class Shape { Abs, App, Succ };

inline bool needs_parens(Shape shape, PrintContext ctx) noexcept {
    switch (shape) {
    case Shape::Abs: return ctx != PrintContext::Top;
    case Shape::App: return ctx != PrintContext::Top && ctx != PrintContext::AppLeft;
    case Shape::Succ: return ctx != PrintContext::Top;
    }
    return true;
}

} // namespace upsilon::detail
