from setuptools import setup, find_packages

with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
    name='CV_Teleport_Fidelity',
    version='1.0.0',
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    license='MIT License',
    description='Teleportation fidelity and non-Gaussianity of photon-subtracted '
                'two-mode squeezed vacuum resources',
    long_description=long_description,
    long_description_content_type="text/markdown",
    install_requires=['numpy', 'astropy', 'scipy'],
    entry_points={'console_scripts': ['cvtelefi=CV_Teleport_Fidelity.cli:main']}
)
