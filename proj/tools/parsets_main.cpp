#include <cstdio>

int main() {
    std::puts("parsets: CLI under construction");
    return 1;
}
