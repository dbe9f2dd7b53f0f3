#include "crosscut/crosscut.hpp"
int main() { return 0; }
