'''Setup file for qwitt.'''
import setuptools

def get_description():
    '''Returns the description of the README.'''
    with open('README.md', 'r') as fhandle:
        description = fhandle.read()
    return description

setuptools.setup(
    name="qwitt-cohomology",
    version="0.1.0",
    description="Window-scale cohomology and deformation checks for the q-deformed Witt superalgebra",
    long_description=get_description(),
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages('src'),
    package_dir={'': 'src'},
    entry_points={
        'console_scripts': [
            'qwitt = qwitt.cli:main'
        ]
    },
    install_requires=[
        'toml', 'click', 'sympy'
    ],
    python_requires='>=3.8',
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics"
    ]
)
