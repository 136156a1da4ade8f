#include "a.h"
#include "b.h"

int util(A a, B b) { return 1; }
