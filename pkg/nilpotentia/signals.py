# -*- coding: utf-8 -*-
from django.dispatch import Signal

# Signals emitted before and after classifying a semigroup.
pre_classify = Signal()
post_classify = Signal()

# Signals emitted before and after certifying minimal non-nilpotency.
pre_minimality_check = Signal()
post_minimality_check = Signal()

# Signal emitted for each isomorphism class found by a census.
census_class_found = Signal()
