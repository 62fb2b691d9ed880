#ifndef SZASZ_SZASZ_HPP
#define SZASZ_SZASZ_HPP

#include "szasz/analysis.hpp"
#include "szasz/errors.hpp"
#include "szasz/function.hpp"
#include "szasz/kantorovich.hpp"
#include "szasz/moments.hpp"
#include "szasz/operators.hpp"
#include "szasz/params.hpp"
#include "szasz/poisson.hpp"
#include "szasz/quadrature.hpp"

#endif // SZASZ_SZASZ_HPP
