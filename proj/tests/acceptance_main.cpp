#include <iostream>

#include "qw/acceptance.hpp"

int main() { return qw::run_acceptance(std::cout, 4) ? 0 : 1; }
