#include "vpl/config.hpp"

namespace vpl {

void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"command", c.command},
                       {"x", c.x},
                       {"Q", c.Q},
                       {"r", c.r},
                       {"A", c.A},
                       {"q", c.q},
                       {"a", c.a},
                       {"limit", c.limit},
                       {"N", c.N},
                       {"seed", c.seed},
                       {"trials", c.trials},
                       {"budget", c.budget},
                       {"threads", c.threads},
                       {"theorem", c.theorem},
                       {"weights", c.weights},
                       {"quantity", c.quantity},
                       {"experiment", c.experiment},
                       {"coeffs", c.coeffs},
                       {"algo", c.algo},
                       {"input", c.input},
                       {"out", c.out},
                       {"prime_cache", c.prime_cache},
                       {"primitive_only", c.primitive_only},
                       {"quick", c.quick},
                       {"record", c.record}};
}

namespace {

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& target) {
    if (j.contains(key)) j.at(key).get_to(target);
}

} // namespace

void from_json(const nlohmann::json& j, RunConfig& c) {
    maybe(j, "command", c.command);
    maybe(j, "x", c.x);
    maybe(j, "Q", c.Q);
    maybe(j, "r", c.r);
    maybe(j, "A", c.A);
    maybe(j, "q", c.q);
    maybe(j, "a", c.a);
    maybe(j, "limit", c.limit);
    maybe(j, "N", c.N);
    maybe(j, "seed", c.seed);
    maybe(j, "trials", c.trials);
    maybe(j, "budget", c.budget);
    maybe(j, "threads", c.threads);
    maybe(j, "theorem", c.theorem);
    maybe(j, "weights", c.weights);
    maybe(j, "quantity", c.quantity);
    maybe(j, "experiment", c.experiment);
    maybe(j, "coeffs", c.coeffs);
    maybe(j, "algo", c.algo);
    maybe(j, "input", c.input);
    maybe(j, "out", c.out);
    maybe(j, "prime_cache", c.prime_cache);
    maybe(j, "primitive_only", c.primitive_only);
    maybe(j, "quick", c.quick);
    maybe(j, "record", c.record);
}

} // namespace vpl
