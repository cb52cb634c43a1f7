"""
Partitioned robust motion planners ("roadmap atlases") for robot-arm forward kinematic maps.
"""
