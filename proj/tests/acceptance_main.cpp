#include <iostream>

#include "kproj/verify.hpp"

int main() {
    const auto results = kproj::run_acceptance(std::cout);
    return kproj::acceptance_exit_code(results);
}
