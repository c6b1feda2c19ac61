#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace rho {

// Simple type: an atom or an arrow. Arrows associate to the right.
class Type {
public:
    Type() = default;

    static Type atom(std::string name);
    static Type arrow(Type dom, Type cod);

    bool valid() const { return rep_ != nullptr; }
    bool is_arrow() const;
    const std::string& name() const;
    const Type& dom() const;
    const Type& cod() const;

    std::string str() const;

    friend int compare(const Type& a, const Type& b);
    friend bool operator==(const Type& a, const Type& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Type& a, const Type& b) { return compare(a, b) != 0; }
    friend bool operator<(const Type& a, const Type& b) { return compare(a, b) < 0; }

private:
    struct Rep;
    std::shared_ptr<const Rep> rep_;
};

// Builds A1 -> (A2 -> ... -> R).
Type arrows(const std::vector<Type>& doms, const Type& result);

using Binding = std::pair<std::string, Type>;
using Context = std::vector<Binding>;

const Type* lookup(const Context& ctx, const std::string& x);
std::string to_string(const Context& ctx);

}  // namespace rho
