#include "bforge/pipeline.hpp"
int main() { return 0; }
