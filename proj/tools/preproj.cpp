#include <iostream>

#include "preproj/dynkin.hpp"
#include "preproj/weyl.hpp"

int main() {
    std::cout << "preproj (in progress)\n";
    return 0;
}
