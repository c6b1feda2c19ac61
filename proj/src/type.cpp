#include "rho/type.hpp"

#include <stdexcept>

namespace rho {

struct Type::Rep {
    std::string name;  // empty for arrows
    Type dom, cod;
};

Type Type::atom(std::string name) {
    Type t;
    t.rep_ = std::make_shared<const Rep>(Rep{std::move(name), Type(), Type()});
    return t;
}

Type Type::arrow(Type dom, Type cod) {
    Type t;
    t.rep_ = std::make_shared<const Rep>(Rep{std::string(), std::move(dom), std::move(cod)});
    return t;
}

bool Type::is_arrow() const { return rep_ && rep_->dom.valid(); }
const std::string& Type::name() const { return rep_->name; }
const Type& Type::dom() const { return rep_->dom; }
const Type& Type::cod() const { return rep_->cod; }

std::string Type::str() const {
    if (!rep_) return "?";
    if (!is_arrow()) return rep_->name;
    std::string d = dom().str();
    if (dom().is_arrow()) d = "(" + d + ")";
    return d + " -> " + cod().str();
}

int compare(const Type& a, const Type& b) {
    if (a.rep_ == b.rep_) return 0;
    if (!a.rep_) return -1;
    if (!b.rep_) return 1;
    bool aa = a.is_arrow(), ba = b.is_arrow();
    if (aa != ba) return aa ? 1 : -1;
    if (!aa) return a.rep_->name.compare(b.rep_->name) < 0 ? -1 : (a.rep_->name == b.rep_->name ? 0 : 1);
    if (int c = compare(a.dom(), b.dom())) return c;
    return compare(a.cod(), b.cod());
}

Type arrows(const std::vector<Type>& doms, const Type& result) {
    Type t = result;
    for (auto it = doms.rbegin(); it != doms.rend(); ++it) t = Type::arrow(*it, t);
    return t;
}

const Type* lookup(const Context& ctx, const std::string& x) {
    // later bindings shadow earlier ones
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
        if (it->first == x) return &it->second;
    return nullptr;
}

std::string to_string(const Context& ctx) {
    std::string s = "[";
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (i) s += ", ";
        s += ctx[i].first + ":" + ctx[i].second.str();
    }
    return s + "]";
}

}  // namespace rho
